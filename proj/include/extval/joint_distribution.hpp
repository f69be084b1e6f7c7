#pragma once

#include <cstddef>
#include <vector>

namespace extval {

// Row-major |C| x |K| matrix of joint probabilities p(c,k).
class JointDistribution {
public:
    JointDistribution() = default;
    JointDistribution(std::size_t num_classes, std::size_t num_clusters, std::vector<double> p);

    std::size_t num_classes() const { return rows_; }
    std::size_t num_clusters() const { return cols_; }
    double at(std::size_t c, std::size_t k) const { return p_[c * cols_ + k]; }
    const std::vector<double>& values() const { return p_; }
    double total() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> p_;
};

} // namespace extval
