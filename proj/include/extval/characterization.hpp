#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "extval/classic_measures.hpp"
#include "extval/model_family.hpp"

namespace extval {

// Parameter grid over the model family at fixed |C| and n.
struct GridSpec {
    std::size_t num_classes = 5;
    std::size_t n = 500;
    std::vector<std::size_t> useful{2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    std::vector<std::size_t> noise{0, 1, 2, 3, 4, 5, 6};
    std::vector<double> eps1{0.0, 1.0 / 15.0, 2.0 / 15.0, 0.2};
    std::vector<double> eps2{0.0, 0.1, 0.2, 0.3};

    // Throws InvalidParameter on empty, unsorted or out-of-domain lists.
    void check() const;
};

// How pair counts are taken from fractional expected tables.
enum class PairConvention {
    Continuous,   // x(x-1)/2 on the real-valued cells
    RoundedCells, // cells rounded to integers first
};

const char* to_string(PairConvention c);

struct GridPoint {
    std::size_t useful = 0; // indices into the GridSpec value lists
    std::size_t noise = 0;
    std::size_t eps1 = 0;
    std::size_t eps2 = 0;

    bool operator==(const GridPoint&) const = default;
};

struct GridRow {
    GridPoint point;
    ModelParams params;
    MeasureVector measures;
};

struct GridResult {
    GridSpec spec;
    PairConvention convention = PairConvention::Continuous;
    std::vector<GridRow> rows; // lexicographic in (useful, noise, eps1, eps2)

    std::optional<std::size_t> find(const GridPoint& p) const;

private:
    friend GridResult evaluate_grid(const GridSpec&, PairConvention, unsigned);
    std::vector<std::ptrdiff_t> index_; // dense over the full cartesian product, -1 if invalid
};

// Valid combinations in lexicographic (useful, noise, eps1, eps2) order.
std::vector<ModelParams> enumerate_valid(const GridSpec& spec);

// Measures on the expected table n * p(c,k) of one parameter combination.
MeasureVector evaluate_params(const ModelParams& params, std::size_t n,
                              PairConvention convention = PairConvention::Continuous);

// threads == 0 uses the hardware concurrency. Output does not depend on the
// thread count.
GridResult evaluate_grid(const GridSpec& spec,
                         PairConvention convention = PairConvention::Continuous,
                         unsigned threads = 0);

// Differences in [-kStrictTolerance, kStrictTolerance] count as zero and fail
// the strict monotonicity tests.
inline constexpr double kStrictTolerance = 1e-12;

// One failing step between two consecutive grid rows. delta is the raw
// change of the measure value.
struct StepViolation {
    std::size_t from_row = 0;
    std::size_t to_row = 0;
    double delta = 0.0;
    bool expected_increase = false;
};

// A sequence of grid rows along one axis, others held fixed, with at least one
// failing step.
struct SequenceViolation {
    std::vector<std::size_t> rows;
    std::vector<StepViolation> steps;
    std::size_t peak_row = 0; // row where the measure is best along the sequence
};

struct MeasureViolations {
    std::vector<SequenceViolation> sequences;

    std::size_t count() const { return sequences.size(); }
    std::size_t step_count() const;
};

struct CheckReport {
    std::string name;
    std::size_t sequences_tested = 0;
    std::size_t steps_tested = 0;
    std::array<MeasureViolations, kNumMeasures> by_measure;

    const MeasureViolations& operator[](Measure m) const {
        return by_measure[static_cast<std::size_t>(m)];
    }
};

// |K_u| axis: steps below |C| must improve the measure, steps at or above
// |C| must worsen it. A step that jumps across |C| is not tested.
CheckReport check_p1(const GridResult& result);
// |K_n| axis over sequences with eps2 > 0: strictly worse with more noise clusters.
CheckReport check_p2(const GridResult& result);
// eps1 axis: strictly worse as eps1 grows.
CheckReport check_p3_eps1(const GridResult& result);
// eps2 axis: strictly worse as eps2 grows (only where noise clusters exist).
CheckReport check_p3_eps2(const GridResult& result);

struct ViolationReport {
    PairConvention convention = PairConvention::Continuous;
    CheckReport p1;
    CheckReport p2;
    CheckReport p3_1;
    CheckReport p3_2;

    // P1 split by the kind of step that failed.
    std::size_t p1_below_count(Measure m) const;
    std::size_t p1_above_count(Measure m) const;
};

ViolationReport check_all(const GridResult& result);

// 1-based ranks, ties share the average rank.
std::vector<double> average_ranks(std::span<const double> values, bool descending);

// Pearson correlation of two rank vectors.
double spearman(std::span<const double> ranks_a, std::span<const double> ranks_b);

struct RankTable {
    std::array<std::vector<double>, kNumMeasures> ranks;

    const std::vector<double>& operator[](Measure m) const {
        return ranks[static_cast<std::size_t>(m)];
    }
};

// Best-first ranks per measure (Q0 ascending, the rest descending).
RankTable rank_table(const GridResult& result);

struct SweepSpec {
    std::size_t num_classes = 5;
    std::size_t useful = 5;
    std::size_t noise = 0;
    std::size_t n = 500;
    std::vector<double> eps1 = default_eps1();

    static std::vector<double> default_eps1(); // 0, 0.05, ..., 0.8
    void check() const;
};

struct SweepPoint {
    double eps1 = 0.0;
    MeasureVector measures;
};

std::vector<SweepPoint> sweep_eps1(const SweepSpec& spec);

} // namespace extval
