#include "extval/classic_measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "extval/error.hpp"
#include "extval/info_measures.hpp"

namespace extval {

double rand_index(const PairCounts& a) {
    if (!(a.total > 0.0))
        throw Error(ErrorKind::DegenerateInput, "rand: fewer than two objects");
    return (a.a00 + a.a11) / a.total;
}

FlaggedValue jaccard_index(const PairCounts& a) {
    double denom = a.a00 + a.a01 + a.a10;
    if (!(denom > 0.0))
        return {0.0, true};
    return {a.a00 / denom, false};
}

double fowlkes_mallows(const PairCounts& a) {
    double same_class = a.same_class();
    double same_cluster = a.same_cluster();
    if (!(same_class > 0.0) || !(same_cluster > 0.0))
        throw Error(ErrorKind::DegenerateInput, "fowlkes-mallows: no pair shares a class or a cluster");
    return a.a00 / std::sqrt(same_class * same_cluster);
}

double hubert_gamma(const PairCounts& a) {
    double m = a.total;
    double bar = a.same_class() * a.same_cluster();
    double denom = bar * (m - a.same_class()) * (m - a.same_cluster());
    if (!(denom > 0.0))
        throw Error(ErrorKind::DegenerateInput, "gamma: all pairs share a class or a cluster, or none do");
    return (m * a.a00 - bar) / std::sqrt(denom);
}

bool HammingAssignments::degenerate() const {
    return std::find(empty_cluster.begin(), empty_cluster.end(), true) != empty_cluster.end() ||
           std::find(empty_class.begin(), empty_class.end(), true) != empty_class.end();
}

HammingAssignments hamming_assignments(const ContingencyTable& table) {
    const std::size_t rows = table.num_classes();
    const std::size_t cols = table.num_clusters();
    HammingAssignments out;
    out.class_of_cluster.assign(cols, 0);
    out.cluster_of_class.assign(rows, 0);
    out.empty_cluster.assign(cols, false);
    out.empty_class.assign(rows, false);

    for (std::size_t k = 0; k < cols; ++k) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < rows; ++c)
            if (table.at(c, k) > table.at(best, k))
                best = c;
        out.class_of_cluster[k] = best;
        out.empty_cluster[k] = table.col_marginal()[k] <= 0.0;
    }
    for (std::size_t c = 0; c < rows; ++c) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < cols; ++k)
            if (table.at(c, k) > table.at(c, best))
                best = k;
        out.cluster_of_class[c] = best;
        out.empty_class[c] = table.row_marginal()[c] <= 0.0;
    }
    return out;
}

double directional_hamming_class_given_cluster(const ContingencyTable& table) {
    auto assign = hamming_assignments(table);
    double d = 0.0;
    for (std::size_t k = 0; k < table.num_clusters(); ++k)
        for (std::size_t c = 0; c < table.num_classes(); ++c)
            if (c != assign.class_of_cluster[k])
                d += table.at(c, k);
    return d;
}

double directional_hamming_cluster_given_class(const ContingencyTable& table) {
    auto assign = hamming_assignments(table);
    double d = 0.0;
    for (std::size_t c = 0; c < table.num_classes(); ++c)
        for (std::size_t k = 0; k < table.num_clusters(); ++k)
            if (k != assign.cluster_of_class[c])
                d += table.at(c, k);
    return d;
}

double normalized_hamming(const ContingencyTable& table) {
    if (!(table.n() > 0.0))
        throw Error(ErrorKind::DegenerateInput, "hamming: table has no mass");
    double d = directional_hamming_class_given_cluster(table) +
               directional_hamming_cluster_given_class(table);
    return 1.0 - d / (2.0 * table.n());
}

std::string_view measure_key(Measure m) {
    switch (m) {
    case Measure::Q0: return "q0";
    case Measure::Q2: return "q2";
    case Measure::Rand: return "rand";
    case Measure::Jaccard: return "jaccard";
    case Measure::FowlkesMallows: return "fowlkes_mallows";
    case Measure::Gamma: return "gamma";
    case Measure::Hamming: return "hamming";
    }
    return "?";
}

std::string_view measure_column(Measure m) {
    return m == Measure::FowlkesMallows ? "fm" : measure_key(m);
}

std::string_view measure_title(Measure m) {
    switch (m) {
    case Measure::Q0: return "Q0";
    case Measure::Q2: return "Q2";
    case Measure::Rand: return "Rand";
    case Measure::Jaccard: return "Jacard";
    case Measure::FowlkesMallows: return "Fowlkes";
    case Measure::Gamma: return "Gamma";
    case Measure::Hamming: return "Hamming";
    }
    return "?";
}

bool MeasureVector::any_degenerate() const {
    return std::find(degenerate.begin(), degenerate.end(), true) != degenerate.end();
}

namespace {

template <class F>
void record(MeasureVector& mv, Measure m, F&& compute) {
    try {
        mv[m] = compute();
    } catch (const Error&) {
        mv[m] = std::numeric_limits<double>::quiet_NaN();
        mv.degenerate[static_cast<std::size_t>(m)] = true;
    }
}

} // namespace

MeasureVector all_measures(const ContingencyTable& table) {
    return all_measures(table, pair_counts_from_table(table));
}

MeasureVector all_measures(const ContingencyTable& table, const PairCounts& pairs) {
    MeasureVector mv;
    QScores scores;
    bool scores_ok = true;
    try {
        scores = q_scores(table);
    } catch (const Error&) {
        scores_ok = false;
    }
    record(mv, Measure::Q0, [&] {
        if (!scores_ok)
            throw Error(ErrorKind::DegenerateInput, "q0 unavailable");
        return scores.q0;
    });
    record(mv, Measure::Q2, [&] {
        if (!scores_ok || !scores.q2)
            throw Error(ErrorKind::DegenerateNormalization, "q2 unavailable");
        return *scores.q2;
    });
    record(mv, Measure::Rand, [&] { return rand_index(pairs); });
    auto jac = jaccard_index(pairs);
    mv[Measure::Jaccard] = jac.value;
    mv.degenerate[static_cast<std::size_t>(Measure::Jaccard)] = jac.degenerate;
    record(mv, Measure::FowlkesMallows, [&] { return fowlkes_mallows(pairs); });
    record(mv, Measure::Gamma, [&] { return hubert_gamma(pairs); });
    record(mv, Measure::Hamming, [&] { return normalized_hamming(table); });
    return mv;
}

} // namespace extval
