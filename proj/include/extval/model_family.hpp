#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "extval/joint_distribution.hpp"

namespace extval {

// Parameters of the synthetic class/cluster family. Clusters are ordered
// useful first (0..useful-1), then noise.
struct ModelParams {
    std::size_t num_classes = 5;
    std::size_t useful_clusters = 5;
    std::size_t noise_clusters = 0;
    double eps1 = 0.0; // mass on unmatched useful clusters
    double eps2 = 0.0; // mass on noise clusters

    double eps() const { return eps1 + eps2; }
    std::size_t num_clusters() const { return useful_clusters + noise_clusters; }

    bool operator==(const ModelParams&) const = default;
};

// Matching between classes and useful clusters. With |C| <= |K_u| every
// useful cluster belongs to exactly one class; with |C| >= |K_u| every class
// belongs to exactly one useful cluster.
struct Assignment {
    std::vector<std::vector<std::size_t>> clusters_of_class; // K(c)
    std::vector<std::vector<std::size_t>> classes_of_cluster; // C(k)

    bool matched(std::size_t c, std::size_t k) const;
};

// Greedy ceiling allocation: the next class takes
// ceil(unassigned clusters / unassigned classes) clusters (or the transposed
// rule when there are more classes than useful clusters).
Assignment assign(std::size_t num_classes, std::size_t useful_clusters);

struct Validation {
    std::vector<std::string> reasons;

    bool ok() const { return reasons.empty(); }
    explicit operator bool() const { return ok(); }
    std::string message() const;
};

// A combination is valid iff the usual domain checks hold and noise clusters
// are present exactly when eps2 > 0.
Validation validate(const ModelParams& params);

// p(c,k) = p(k|c) / |C| with
//   p(k|c) = (1 - eps) / |K(c)|          k in K(c)
//          = eps1 / (|K_u| - |K(c)|)     k useful, not in K(c)
//          = eps2 / |K_n|                k noise
JointDistribution build_joint(const ModelParams& params);

} // namespace extval
