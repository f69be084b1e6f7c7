#include "extval/info_measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "extval/error.hpp"

namespace extval {

namespace {

// Values within this distance of zero are round-off.
constexpr double kClamp = 1e-12;

double clamp_nonneg(double v) { return v < kClamp ? 0.0 : v; }

double sum(std::span<const double> xs) { return std::accumulate(xs.begin(), xs.end(), 0.0); }

// Above this the product form gets slow and lgamma is used instead.
constexpr std::size_t kMaxProductTerms = 256;

} // namespace

double empirical_entropy(std::span<const double> marginal) {
    double n = sum(marginal);
    if (!(n > 0.0))
        throw Error(ErrorKind::DegenerateInput, "entropy: marginal has no mass");
    double h = 0.0;
    for (double x : marginal) {
        if (x < 0.0)
            throw Error(ErrorKind::Inconsistent, "entropy: negative count");
        if (x > 0.0) {
            double p = x / n;
            h -= p * std::log2(p);
        }
    }
    return clamp_nonneg(h);
}

double empirical_conditional_entropy(const ContingencyTable& table) {
    double n = table.n();
    if (!(n > 0.0))
        throw Error(ErrorKind::DegenerateInput, "conditional entropy: table has no mass");
    const auto& hk = table.col_marginal();
    double h = 0.0;
    for (std::size_t k = 0; k < table.num_clusters(); ++k) {
        if (hk[k] <= 0.0)
            continue;
        for (std::size_t c = 0; c < table.num_classes(); ++c) {
            double x = table.at(c, k);
            if (x > 0.0)
                h -= (x / n) * std::log2(x / hk[k]);
        }
    }
    return clamp_nonneg(h);
}

double mutual_information(const ContingencyTable& table) {
    return clamp_nonneg(empirical_entropy(table.row_marginal()) -
                        empirical_conditional_entropy(table));
}

double column_code_length(double h_k, std::size_t num_classes) {
    if (num_classes == 0)
        throw Error(ErrorKind::InvalidParameter, "code length: need at least one class");
    if (h_k < 0.0 || !std::isfinite(h_k))
        throw Error(ErrorKind::Inconsistent, "code length: column mass must be finite and non-negative");
    const std::size_t r = num_classes - 1;
    if (r == 0 || h_k == 0.0)
        return 0.0;

    // C(h + r, r) = prod_{i=1..r} (h + i) / i holds for real h as well.
    // For integral h we may take the shorter of the two symmetric products.
    double rounded = std::round(h_k);
    bool integral = std::abs(h_k - rounded) <= 1e-9;
    if (integral) {
        double terms = std::min<double>(static_cast<double>(r), rounded);
        if (terms <= static_cast<double>(kMaxProductTerms)) {
            double m = rounded + static_cast<double>(r);
            double bits = 0.0;
            for (double i = 1.0; i <= terms; i += 1.0)
                bits += std::log2((m - terms + i) / i);
            return bits;
        }
    } else if (r <= kMaxProductTerms) {
        double bits = 0.0;
        for (std::size_t i = 1; i <= r; ++i) {
            double di = static_cast<double>(i);
            bits += std::log2((h_k + di) / di);
        }
        return bits;
    }
    double rr = static_cast<double>(r);
    double nats = std::lgamma(h_k + rr + 1.0) - std::lgamma(h_k + 1.0) - std::lgamma(rr + 1.0);
    return nats / std::numbers::ln2;
}

double table_code_length(const ContingencyTable& table) {
    double bits = 0.0;
    for (double hk : table.col_marginal())
        bits += column_code_length(hk, table.num_classes());
    return bits;
}

double q0(const ContingencyTable& table) {
    return empirical_conditional_entropy(table) + table_code_length(table) / table.n();
}

double q0_asymptotic(double h_cond, std::size_t num_clusters, std::size_t num_classes, double n) {
    if (n < 2.0)
        throw Error(ErrorKind::InvalidParameter, "asymptotic q0: n must be at least 2");
    double params = static_cast<double>(num_clusters) * (static_cast<double>(num_classes) - 1.0);
    return h_cond + params * std::log2(n) / n;
}

double q0_min(std::span<const double> class_marginal) {
    double n = sum(class_marginal);
    if (!(n > 0.0))
        throw Error(ErrorKind::DegenerateInput, "q0_min: marginal has no mass");
    double bits = 0.0;
    for (double hc : class_marginal)
        bits += column_code_length(hc, class_marginal.size());
    return bits / n;
}

double q0_max(std::span<const double> class_marginal) {
    return empirical_entropy(class_marginal) + std::log2(static_cast<double>(class_marginal.size()));
}

namespace {

std::optional<double> normalize(double q0_value, double lo, double hi) {
    double span = hi - lo;
    if (!(span > kClamp))
        return std::nullopt;
    return (hi - q0_value) / span;
}

} // namespace

double q2(const ContingencyTable& table) {
    auto v = normalize(q0(table), q0_min(table.row_marginal()), q0_max(table.row_marginal()));
    if (!v)
        throw Error(ErrorKind::DegenerateNormalization, "q2: q0_max equals q0_min");
    return *v;
}

QScores q_scores(const ContingencyTable& table) {
    QScores s;
    s.h_cond = empirical_conditional_entropy(table);
    s.model_cost_per_object = table_code_length(table) / table.n();
    s.q0 = s.h_cond + s.model_cost_per_object;
    s.q0_min = q0_min(table.row_marginal());
    s.q0_max = q0_max(table.row_marginal());
    s.q2 = normalize(s.q0, s.q0_min, s.q0_max);
    s.mutual_information = clamp_nonneg(empirical_entropy(table.row_marginal()) - s.h_cond);
    return s;
}

} // namespace extval
