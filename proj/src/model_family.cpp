#include "extval/model_family.hpp"

#include <algorithm>
#include <cmath>

#include "extval/error.hpp"

namespace extval {

bool Assignment::matched(std::size_t c, std::size_t k) const {
    const auto& ks = clusters_of_class[c];
    return std::find(ks.begin(), ks.end(), k) != ks.end();
}

namespace {

// Splits `items` consecutive indices among `groups` owners, each owner
// taking the ceiling of remaining items over remaining owners.
std::vector<std::vector<std::size_t>> ceiling_split(std::size_t groups, std::size_t items) {
    std::vector<std::vector<std::size_t>> out(groups);
    std::size_t next = 0;
    for (std::size_t g = 0; g < groups; ++g) {
        std::size_t remaining_items = items - next;
        std::size_t remaining_groups = groups - g;
        std::size_t take = (remaining_items + remaining_groups - 1) / remaining_groups;
        for (std::size_t i = 0; i < take; ++i)
            out[g].push_back(next++);
    }
    return out;
}

} // namespace

Assignment assign(std::size_t num_classes, std::size_t useful_clusters) {
    if (num_classes == 0 || useful_clusters == 0)
        throw Error(ErrorKind::InvalidParameter, "assign: need at least one class and one useful cluster");
    Assignment a;
    a.clusters_of_class.resize(num_classes);
    a.classes_of_cluster.resize(useful_clusters);
    if (num_classes <= useful_clusters) {
        a.clusters_of_class = ceiling_split(num_classes, useful_clusters);
        for (std::size_t c = 0; c < num_classes; ++c)
            for (std::size_t k : a.clusters_of_class[c])
                a.classes_of_cluster[k].push_back(c);
    } else {
        a.classes_of_cluster = ceiling_split(useful_clusters, num_classes);
        for (std::size_t k = 0; k < useful_clusters; ++k)
            for (std::size_t c : a.classes_of_cluster[k])
                a.clusters_of_class[c].push_back(k);
    }
    return a;
}

std::string Validation::message() const {
    std::string out;
    for (const auto& r : reasons) {
        if (!out.empty())
            out += "; ";
        out += r;
    }
    return out;
}

Validation validate(const ModelParams& p) {
    Validation v;
    if (p.num_classes < 1)
        v.reasons.push_back("need at least one class");
    if (p.useful_clusters < 1)
        v.reasons.push_back("need at least one useful cluster");
    auto in_unit = [](double e) { return std::isfinite(e) && e >= 0.0 && e < 1.0; };
    if (!in_unit(p.eps1))
        v.reasons.push_back("eps1 must lie in [0, 1)");
    if (!in_unit(p.eps2))
        v.reasons.push_back("eps2 must lie in [0, 1)");
    if (!(p.eps() < 1.0))
        v.reasons.push_back("eps1 + eps2 must be below 1");
    if (p.eps2 > 0.0 && p.noise_clusters == 0)
        v.reasons.push_back("eps2 > 0 requires at least one noise cluster");
    if (p.noise_clusters > 0 && !(p.eps2 > 0.0))
        v.reasons.push_back("noise clusters require eps2 > 0");
    if (p.eps1 > 0.0 && p.num_classes >= 1 && p.useful_clusters >= 1) {
        auto a = assign(p.num_classes, p.useful_clusters);
        for (const auto& ks : a.clusters_of_class) {
            if (p.useful_clusters <= ks.size()) {
                v.reasons.push_back("eps1 > 0 requires every class to have an unmatched useful cluster");
                break;
            }
        }
    }
    return v;
}

JointDistribution build_joint(const ModelParams& params) {
    if (auto v = validate(params); !v)
        throw Error(ErrorKind::InvalidParameter, "model parameters: " + v.message());

    const std::size_t rows = params.num_classes;
    const std::size_t useful = params.useful_clusters;
    const std::size_t cols = params.num_clusters();
    const double p_class = 1.0 / static_cast<double>(rows);
    const auto a = assign(rows, useful);

    std::vector<double> p(rows * cols, 0.0);
    for (std::size_t c = 0; c < rows; ++c) {
        const double matched = static_cast<double>(a.clusters_of_class[c].size());
        const double unmatched = static_cast<double>(useful) - matched;
        for (std::size_t k = 0; k < useful; ++k) {
            double cond = a.matched(c, k) ? (1.0 - params.eps()) / matched
                          : params.eps1 > 0.0 ? params.eps1 / unmatched
                                              : 0.0;
            p[c * cols + k] = p_class * cond;
        }
        for (std::size_t k = useful; k < cols; ++k)
            p[c * cols + k] = p_class * params.eps2 / static_cast<double>(params.noise_clusters);
    }
    return JointDistribution(rows, cols, std::move(p));
}

} // namespace extval
