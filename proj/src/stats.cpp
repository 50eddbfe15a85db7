#include "adhoc/stats.hpp"

#include "adhoc/context.hpp"
#include "adhoc/js/lexer.hpp"
#include "adhoc/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace adhoc::stats {

void Counter::add(const std::string& label, std::int64_t n) {
    counts_[label] += n;
    total_ += n;
}

void Counter::merge(const Counter& other) {
    for (const auto& [label, n] : other.counts_) counts_[label] += n;
    total_ += other.total_;
}

std::int64_t Counter::count(const std::string& label) const {
    const auto it = counts_.find(label);
    return it == counts_.end() ? 0 : it->second;
}

Ranked Counter::ranked() const {
    Ranked out(counts_.begin(), counts_.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    return out;
}

Ranked Counter::top(std::size_t n) const {
    Ranked out = ranked();
    if (out.size() > n) out.resize(n);
    return out;
}

double Distribution::fraction(const std::string& label) const {
    if (total == 0) return 0.0;
    for (const auto& [l, n] : counts) {
        if (l == label) return static_cast<double>(n) / static_cast<double>(total);
    }
    return 0.0;
}

std::vector<std::pair<std::string, double>> Distribution::fractions() const {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& [l, n] : counts) out.emplace_back(l, static_cast<double>(n) / static_cast<double>(total));
    return out;
}

Distribution to_distribution(const Counter& counter) { return {counter.ranked(), counter.total()}; }

Distribution block_distribution(const std::vector<LogRecord>& records) {
    Counter c;
    for (const LogRecord& r : records) c.add(r.block_statement);
    return to_distribution(c);
}

int IntersectionTable::index(bool is_async, bool is_callback, bool is_anonymous) {
    return (is_async ? 4 : 0) | (is_callback ? 2 : 0) | (is_anonymous ? 1 : 0);
}

std::string IntersectionTable::label(int index) {
    std::string out;
    auto append = [&](const char* part) {
        if (!out.empty()) out += '+';
        out += part;
    };
    if ((index & 4) != 0) append("async");
    if ((index & 2) != 0) append("callback");
    if ((index & 1) != 0) append("anonymous");
    return out.empty() ? "none" : out;
}

void IntersectionTable::add(bool is_async, bool is_callback, bool is_anonymous) {
    ++cells[static_cast<std::size_t>(index(is_async, is_callback, is_anonymous))];
}

void IntersectionTable::merge(const IntersectionTable& other) {
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] += other.cells[i];
}

std::int64_t IntersectionTable::total() const { return std::accumulate(cells.begin(), cells.end(), std::int64_t{0}); }

IntersectionTable flag_intersections(const std::vector<LogRecord>& records) {
    IntersectionTable t;
    for (const LogRecord& r : records) t.add(r.is_async_function, r.is_callback_function, r.is_anonymous_function);
    return t;
}

void MonthlyAccumulator::add(const LogRecord& record) {
    const auto& text = basis_ == TimeBasis::event_time ? record.event_time : record.author_time;
    const std::optional<Timestamp> ts = text ? parse_timestamp(*text) : std::nullopt;
    if (!ts) {
        ++missing_;
        return;
    }
    auto& [total, async] = months_[format_month(*ts)];
    ++total;
    if (record.is_async_function) ++async;
}

void MonthlyAccumulator::merge(const MonthlyAccumulator& other) {
    for (const auto& [month, counts] : other.months_) {
        months_[month].first += counts.first;
        months_[month].second += counts.second;
    }
    missing_ += other.missing_;
}

MonthlySeries MonthlyAccumulator::series() const {
    MonthlySeries s;
    s.available = !months_.empty();
    s.missing = missing_;
    for (const auto& [month, counts] : months_) {
        s.points.push_back({month, counts.first, counts.second,
                            100.0 * static_cast<double>(counts.second) / static_cast<double>(counts.first)});
    }
    return s;
}

MonthlySeries monthly_async_series(const std::vector<LogRecord>& records, TimeBasis basis) {
    MonthlyAccumulator acc(basis);
    for (const LogRecord& r : records) acc.add(r);
    return acc.series();
}

std::vector<std::string> name_values(const LogRecord& record, NameKey key) {
    switch (key) {
        case NameKey::function_name:
            if (record.function_name == kTopLevelName || record.function_name == kAnonymousName) return {};
            return {record.function_name};
        case NameKey::callback_callee_name:
            if (!record.callback_callee_name) return {};
            return {*record.callback_callee_name};
        case NameKey::normalized_literal: {
            std::vector<std::string> out;
            try {
                const semantics::ArgumentProfile p = semantics::profile_log_text(record.log_in_string);
                for (std::size_t i = 0; i < p.kinds.size(); ++i) {
                    if (p.kinds[i] == semantics::ArgKind::literal || p.kinds[i] == semantics::ArgKind::template_literal) {
                        out.push_back(semantics::normalize_literal(p.literal_texts[i]));
                    }
                }
            } catch (const js::SyntaxError&) {
            }
            return out;
        }
    }
    return {};
}

Ranked top_names(const std::vector<LogRecord>& records, NameKey key, std::size_t n) {
    if (n < 1) throw ArgumentError("top_names needs n >= 1");
    Counter c;
    for (const LogRecord& r : records) {
        for (const std::string& v : name_values(r, key)) c.add(v);
    }
    return c.top(n);
}

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 10000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v, double mean) {
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(v.size() - 1);
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_upper_tail(double t, double df) {
    if (t == 0.0) return 0.5;
    if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
    const double tail = 0.5 * incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
    return t > 0 ? tail : 1.0 - tail;
}

TTestResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b, Sidedness sidedness) {
    if (a.size() < 2 || b.size() < 2) throw ArgumentError("welch_t_test needs at least two values per sample");
    const double ma = mean_of(a);
    const double mb = mean_of(b);
    const double va = sample_variance(a, ma) / static_cast<double>(a.size());
    const double vb = sample_variance(b, mb) / static_cast<double>(b.size());
    if (va == 0.0 && vb == 0.0) throw ArgumentError("welch_t_test needs nonzero variance in at least one sample");
    TTestResult r;
    r.sidedness = sidedness;
    r.t_statistic = (ma - mb) / std::sqrt(va + vb);
    r.degrees_of_freedom = (va + vb) * (va + vb) / (va * va / static_cast<double>(a.size() - 1) +
                                                    vb * vb / static_cast<double>(b.size() - 1));
    if (sidedness == Sidedness::one_sided_greater) {
        r.p_value = student_t_upper_tail(r.t_statistic, r.degrees_of_freedom);
    } else {
        const double x = r.degrees_of_freedom / (r.degrees_of_freedom + r.t_statistic * r.t_statistic);
        r.p_value = r.t_statistic == 0.0 ? 1.0 : incomplete_beta(r.degrees_of_freedom / 2.0, 0.5, x);
    }
    r.p_value = std::clamp(r.p_value, 0.0, 1.0);
    return r;
}

SummaryStats summary_stats(std::vector<double> values) {
    if (values.empty()) throw ArgumentError("summary_stats needs at least one value");
    std::sort(values.begin(), values.end());
    SummaryStats s;
    const std::size_t n = values.size();
    s.mean = mean_of(values);
    s.std_dev = n > 1 ? std::sqrt(sample_variance(values, s.mean)) : 0.0;
    s.min = values.front();
    s.max = values.back();
    s.median = n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
    return s;
}

int months_since(Timestamp last_updated, Timestamp query_date) {
    if (query_date < last_updated) throw ArgumentError("query date precedes the last update");
    const double days = static_cast<double>((query_date - last_updated).count()) / 86400.0;
    return static_cast<int>(std::floor(days / kDaysPerMonth));
}

std::vector<std::pair<int, double>> cumulative_activity_curve(const std::vector<RepoMetadata>& repos,
                                                              Timestamp query_date) {
    if (repos.empty()) throw ArgumentError("cumulative_activity_curve needs at least one repository");
    std::vector<int> gaps;
    gaps.reserve(repos.size());
    for (const RepoMetadata& r : repos) gaps.push_back(months_since(r.last_updated, query_date));
    std::sort(gaps.begin(), gaps.end());
    std::vector<std::pair<int, double>> curve;
    std::size_t within = 0;
    for (int m = 0; m <= gaps.back(); ++m) {
        while (within < gaps.size() && gaps[within] <= m) ++within;
        curve.emplace_back(m, within == gaps.size() ? 1.0 : static_cast<double>(within) / static_cast<double>(gaps.size()));
    }
    return curve;
}

void BaselineCounts::add_file(const js::Ast& ast, bool count_logical_operators) {
    for (const js::Node* fn : context::find_functions(ast)) {
        const context::Classification c = context::classify_function(fn);
        ++total;
        if (c.is_async) ++async;
        if (c.is_anonymous) ++anonymous;
        if (c.is_callback) ++callback;
        if (!c.is_async && !c.is_anonymous && !c.is_callback) ++others;
        complexities.push_back(context::cyclomatic_complexity(fn, count_logical_operators));
    }
}

void BaselineCounts::merge(const BaselineCounts& other) {
    total += other.total;
    async += other.async;
    anonymous += other.anonymous;
    callback += other.callback;
    others += other.others;
    complexities.insert(complexities.end(), other.complexities.begin(), other.complexities.end());
}

BaselineCounts baseline_function_distribution(const std::vector<const js::Ast*>& corpus, bool count_logical_operators) {
    BaselineCounts counts;
    for (const js::Ast* ast : corpus) counts.add_file(*ast, count_logical_operators);
    return counts;
}

std::optional<double> cohens_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.size() != b.size()) throw ArgumentError("cohens_kappa needs sequences of equal length");
    if (a.empty()) throw ArgumentError("cohens_kappa needs nonempty sequences");
    const double n = static_cast<double>(a.size());
    std::map<std::string, std::pair<double, double>> marginals;
    double agree = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) agree += 1.0;
        marginals[a[i]].first += 1.0;
        marginals[b[i]].second += 1.0;
    }
    const double p_o = agree / n;
    double p_e = 0.0;
    for (const auto& [label, m] : marginals) p_e += (m.first / n) * (m.second / n);
    if (p_e >= 1.0) return std::nullopt;
    return (p_o - p_e) / (1.0 - p_e);
}

}  // namespace adhoc::stats
