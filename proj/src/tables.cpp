#include "extval/tables.hpp"

#include <cmath>
#include <numeric>
#include <unordered_map>

#include "extval/error.hpp"

namespace extval {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::EmptyInput: return "empty-input";
    case ErrorKind::Inconsistent: return "inconsistent";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::DegenerateNormalization: return "degenerate-normalization";
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::Parse: return "parse";
    }
    return "unknown";
}

JointDistribution::JointDistribution(std::size_t num_classes, std::size_t num_clusters,
                                     std::vector<double> p)
    : rows_(num_classes), cols_(num_clusters), p_(std::move(p)) {
    if (p_.size() != rows_ * cols_)
        throw Error(ErrorKind::Inconsistent, "joint distribution: shape does not match data");
}

double JointDistribution::total() const {
    return std::accumulate(p_.begin(), p_.end(), 0.0);
}

namespace {

template <class T>
std::vector<std::size_t> canonicalize(std::span<const T> raw, std::vector<std::string>& names,
                                      auto&& to_name) {
    std::unordered_map<T, std::size_t> index;
    std::vector<std::size_t> ids;
    ids.reserve(raw.size());
    for (const auto& v : raw) {
        auto [it, inserted] = index.try_emplace(v, index.size());
        if (inserted)
            names.push_back(to_name(v));
        ids.push_back(it->second);
    }
    return ids;
}

void check_pairable(std::size_t a, std::size_t b) {
    if (a != b)
        throw Error(ErrorKind::Inconsistent, "labeling: class and cluster sequences differ in length");
    if (a == 0)
        throw Error(ErrorKind::EmptyInput, "labeling: no objects");
}

std::vector<std::string> numbered(std::size_t count) {
    std::vector<std::string> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(std::to_string(i + 1));
    return out;
}

} // namespace

Labeling Labeling::from_strings(std::span<const std::string> classes,
                                std::span<const std::string> clusters) {
    check_pairable(classes.size(), clusters.size());
    Labeling out;
    auto same = [](const std::string& s) { return s; };
    out.class_ids_ = canonicalize(classes, out.class_labels_, same);
    out.cluster_ids_ = canonicalize(clusters, out.cluster_labels_, same);
    return out;
}

Labeling Labeling::from_ids(std::span<const std::int64_t> classes,
                            std::span<const std::int64_t> clusters) {
    check_pairable(classes.size(), clusters.size());
    Labeling out;
    auto name = [](std::int64_t v) { return std::to_string(v); };
    out.class_ids_ = canonicalize(classes, out.class_labels_, name);
    out.cluster_ids_ = canonicalize(clusters, out.cluster_labels_, name);
    return out;
}

ContingencyTable::ContingencyTable(std::size_t num_classes, std::size_t num_clusters,
                                   std::vector<double> counts,
                                   std::vector<std::string> class_labels,
                                   std::vector<std::string> cluster_labels)
    : rows_(num_classes), cols_(num_clusters), counts_(std::move(counts)),
      row_marginal_(num_classes, 0.0), col_marginal_(num_clusters, 0.0),
      class_labels_(std::move(class_labels)), cluster_labels_(std::move(cluster_labels)) {
    if (rows_ == 0 || cols_ == 0)
        throw Error(ErrorKind::EmptyInput, "contingency table: no classes or no clusters");
    if (counts_.size() != rows_ * cols_)
        throw Error(ErrorKind::Inconsistent, "contingency table: shape does not match data");
    if (class_labels_.empty())
        class_labels_ = numbered(rows_);
    if (cluster_labels_.empty())
        cluster_labels_ = numbered(cols_);
    if (class_labels_.size() != rows_ || cluster_labels_.size() != cols_)
        throw Error(ErrorKind::Inconsistent, "contingency table: label count does not match shape");

    for (std::size_t c = 0; c < rows_; ++c) {
        for (std::size_t k = 0; k < cols_; ++k) {
            double h = counts_[c * cols_ + k];
            if (!std::isfinite(h) || h < 0.0)
                throw Error(ErrorKind::Inconsistent, "contingency table: counts must be finite and non-negative");
            row_marginal_[c] += h;
            col_marginal_[k] += h;
        }
    }
    n_ = std::accumulate(row_marginal_.begin(), row_marginal_.end(), 0.0);
}

ContingencyTable ContingencyTable::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty())
        throw Error(ErrorKind::EmptyInput, "contingency table: no rows");
    std::size_t cols = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols)
            throw Error(ErrorKind::Inconsistent, "contingency table: ragged rows");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return ContingencyTable(rows.size(), cols, std::move(flat));
}

bool ContingencyTable::is_integral(double tol) const {
    for (double h : counts_)
        if (std::abs(h - std::round(h)) > tol)
            return false;
    return true;
}

ContingencyTable build_contingency(const Labeling& labels) {
    if (labels.size() == 0)
        throw Error(ErrorKind::EmptyInput, "labeling: no objects");
    std::size_t rows = labels.num_classes();
    std::size_t cols = labels.num_clusters();
    std::vector<double> counts(rows * cols, 0.0);
    auto cls = labels.class_ids();
    auto clu = labels.cluster_ids();
    for (std::size_t i = 0; i < labels.size(); ++i)
        counts[cls[i] * cols + clu[i]] += 1.0;
    return ContingencyTable(rows, cols, std::move(counts), labels.class_labels(),
                            labels.cluster_labels());
}

PairCounts pair_counts_from_table(const ContingencyTable& table) {
    double both = 0.0;
    for (double h : table.counts())
        both += pairs_of(h);
    double same_class = 0.0;
    for (double h : table.row_marginal())
        same_class += pairs_of(h);
    double same_cluster = 0.0;
    for (double h : table.col_marginal())
        same_cluster += pairs_of(h);

    PairCounts out;
    out.total = pairs_of(table.n());
    out.a00 = both;
    out.a01 = same_class - both;
    out.a10 = same_cluster - both;
    out.a11 = out.total - out.a00 - out.a01 - out.a10;

    constexpr double kSlack = -1e-9;
    double scale = std::max(1.0, out.total);
    for (double v : {out.a00, out.a01, out.a10, out.a11})
        if (v < kSlack * scale)
            throw Error(ErrorKind::Inconsistent, "pair counts: negative derived count");
    return out;
}

PairCounts pair_counts_bruteforce(const Labeling& labels) {
    auto cls = labels.class_ids();
    auto clu = labels.cluster_ids();
    std::size_t n = labels.size();
    std::uint64_t a[2][2] = {{0, 0}, {0, 0}};
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            int i = cls[p] == cls[q] ? 0 : 1;
            int j = clu[p] == clu[q] ? 0 : 1;
            ++a[i][j];
        }
    }
    PairCounts out;
    out.a00 = static_cast<double>(a[0][0]);
    out.a01 = static_cast<double>(a[0][1]);
    out.a10 = static_cast<double>(a[1][0]);
    out.a11 = static_cast<double>(a[1][1]);
    out.total = static_cast<double>(n * (n - 1) / 2);
    return out;
}

ContingencyTable expected_table(const JointDistribution& p, std::size_t n) {
    if (n == 0)
        throw Error(ErrorKind::InvalidParameter, "expected table: n must be positive");
    if (std::abs(p.total() - 1.0) > 1e-9)
        throw Error(ErrorKind::Inconsistent, "expected table: distribution does not sum to 1");
    std::vector<double> counts(p.values().size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        counts[i] = static_cast<double>(n) * p.values()[i];
    return ContingencyTable(p.num_classes(), p.num_clusters(), std::move(counts));
}

ContingencyTable rounded_table(const ContingencyTable& table) {
    std::vector<double> counts = table.counts();
    for (double& h : counts)
        h = std::round(h);
    return ContingencyTable(table.num_classes(), table.num_clusters(), std::move(counts),
                            table.class_labels(), table.cluster_labels());
}

} // namespace extval
