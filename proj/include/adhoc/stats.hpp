#pragma once

#include "adhoc/error.hpp"
#include "adhoc/js/ast.hpp"
#include "adhoc/record.hpp"
#include "adhoc/repo.hpp"
#include "adhoc/time.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace adhoc::stats {

using Ranked = std::vector<std::pair<std::string, std::int64_t>>;

// Label counts that merge by addition. Ranking is by descending count, ties
// in lexicographic order.
class Counter {
public:
    void add(const std::string& label, std::int64_t n = 1);
    void merge(const Counter& other);
    std::int64_t total() const { return total_; }
    std::int64_t count(const std::string& label) const;
    Ranked ranked() const;
    Ranked top(std::size_t n) const;
    bool operator==(const Counter&) const = default;

private:
    std::map<std::string, std::int64_t> counts_;
    std::int64_t total_ = 0;
};

struct Distribution {
    Ranked counts;  // ranked
    std::int64_t total = 0;
    double fraction(const std::string& label) const;
    std::vector<std::pair<std::string, double>> fractions() const;
};

Distribution to_distribution(const Counter& counter);
Distribution block_distribution(const std::vector<LogRecord>& records);

// Exclusive cells indexed by async << 2 | callback << 1 | anonymous.
struct IntersectionTable {
    std::array<std::int64_t, 8> cells{};
    void add(bool is_async, bool is_callback, bool is_anonymous);
    void merge(const IntersectionTable& other);
    std::int64_t total() const;
    static int index(bool is_async, bool is_callback, bool is_anonymous);
    static std::string label(int index);  // "async+callback", "none", ...
    bool operator==(const IntersectionTable&) const = default;
};

IntersectionTable flag_intersections(const std::vector<LogRecord>& records);

enum class TimeBasis { event_time, author_time };

struct MonthlyPoint {
    std::string month;  // YYYY-MM
    std::int64_t total = 0;
    std::int64_t async = 0;
    double percentage = 0.0;
};

struct MonthlySeries {
    bool available = false;  // at least one record carried the timestamp
    std::int64_t missing = 0;
    std::vector<MonthlyPoint> points;
};

class MonthlyAccumulator {
public:
    explicit MonthlyAccumulator(TimeBasis basis = TimeBasis::event_time) : basis_(basis) {}
    void add(const LogRecord& record);
    void merge(const MonthlyAccumulator& other);
    MonthlySeries series() const;

private:
    TimeBasis basis_;
    std::map<std::string, std::pair<std::int64_t, std::int64_t>> months_;  // total, async
    std::int64_t missing_ = 0;
};

MonthlySeries monthly_async_series(const std::vector<LogRecord>& records, TimeBasis basis = TimeBasis::event_time);

enum class NameKey { function_name, callback_callee_name, normalized_literal };

// Values of `key` carried by one record. Top-level and unresolved function
// names are absent; every literal argument contributes one normalized text.
std::vector<std::string> name_values(const LogRecord& record, NameKey key);

// Throws ArgumentError when n < 1.
Ranked top_names(const std::vector<LogRecord>& records, NameKey key, std::size_t n);

enum class Sidedness { one_sided_greater, two_sided };

struct TTestResult {
    double t_statistic = 0.0;
    double degrees_of_freedom = 0.0;
    double p_value = 0.0;
    Sidedness sidedness = Sidedness::one_sided_greater;
};

// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);
// P(T > t) for Student's t with df degrees of freedom.
double student_t_upper_tail(double t, double df);

// Throws ArgumentError when a sample has fewer than two values or both
// variances are zero.
TTestResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b,
                         Sidedness sidedness = Sidedness::one_sided_greater);

struct SummaryStats {
    double mean = 0.0;
    double std_dev = 0.0;
    double min = 0.0;
    double median = 0.0;
    double max = 0.0;
};

SummaryStats summary_stats(std::vector<double> values);  // throws ArgumentError on empty input

inline constexpr double kDaysPerMonth = 30.44;

int months_since(Timestamp last_updated, Timestamp query_date);
// Dense from month 0 to the largest gap.
std::vector<std::pair<int, double>> cumulative_activity_curve(const std::vector<RepoMetadata>& repos,
                                                              Timestamp query_date);

struct BaselineCounts {
    std::int64_t total = 0;
    std::int64_t async = 0;
    std::int64_t anonymous = 0;
    std::int64_t callback = 0;
    std::int64_t others = 0;  // none of the three flags
    std::vector<int> complexities;
    void add_file(const js::Ast& ast, bool count_logical_operators = true);
    void merge(const BaselineCounts& other);
    bool operator==(const BaselineCounts&) const = default;
};

BaselineCounts baseline_function_distribution(const std::vector<const js::Ast*>& corpus,
                                              bool count_logical_operators = true);

// Undefined (nullopt) when chance agreement is 1. Throws ArgumentError on
// length mismatch or empty input.
std::optional<double> cohens_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace adhoc::stats
