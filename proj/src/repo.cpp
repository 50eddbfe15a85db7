#include "adhoc/repo.hpp"

#include "adhoc/error.hpp"

namespace adhoc {

bool is_active(Timestamp last_updated, Timestamp query_date) {
    if (query_date < last_updated) throw ArgumentError("query date precedes the last update");
    return query_date - last_updated <= std::chrono::days(kActiveWindowDays);
}

}  // namespace adhoc
