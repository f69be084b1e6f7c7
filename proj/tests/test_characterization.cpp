#include <doctest.h>

#include <cmath>
#include <cstring>
#include <tuple>

#include "extval/characterization.hpp"
#include "extval/error.hpp"
#include "extval/info_measures.hpp"
#include "golden.hpp"

using namespace extval;
using doctest::Approx;

namespace {

const GridResult& default_grid() {
    static const GridResult grid = evaluate_grid(GridSpec{});
    return grid;
}

std::size_t row_of(const GridResult& g, std::size_t ku, std::size_t kn, double e1, double e2) {
    for (std::size_t i = 0; i < g.rows.size(); ++i) {
        const auto& p = g.rows[i].params;
        if (p.useful_clusters == ku && p.noise_clusters == kn && std::abs(p.eps1 - e1) < 1e-15 &&
            std::abs(p.eps2 - e2) < 1e-15)
            return i;
    }
    FAIL("combination not in grid");
    return 0;
}

bool bitwise_equal(const MeasureVector& a, const MeasureVector& b) {
    return std::memcmp(a.values.data(), b.values.data(), sizeof(double) * kNumMeasures) == 0 &&
           a.degenerate == b.degenerate;
}

} // namespace

TEST_CASE("enumerate_valid counts") {
    CHECK(enumerate_valid(GridSpec{}).size() == 760);

    GridSpec clean;
    clean.noise = {0};
    clean.eps2 = {0.0};
    CHECK(enumerate_valid(clean).size() == 40);

    GridSpec impossible;
    impossible.noise = {0};
    impossible.eps2 = {0.1};
    CHECK(enumerate_valid(impossible).empty());

    // 1120 raw combinations: 40 noise-free plus 10 x 6 x 4 x 3 noisy ones.
    CHECK(10 * 7 * 4 * 4 == 1120);
    CHECK(40 + 10 * 6 * 4 * 3 == 760);
}

TEST_CASE("enumerate_valid order is lexicographic") {
    auto combos = enumerate_valid(GridSpec{});
    auto key = [](const ModelParams& p) {
        return std::tuple(p.useful_clusters, p.noise_clusters, p.eps1, p.eps2);
    };
    for (std::size_t i = 1; i < combos.size(); ++i)
        CHECK(key(combos[i - 1]) < key(combos[i]));
}

TEST_CASE("grid spec validation") {
    GridSpec s;
    s.eps1 = {0.2, 0.1};
    CHECK_THROWS_AS(s.check(), Error);
    s = GridSpec{};
    s.useful = {};
    CHECK_THROWS_AS(s.check(), Error);
    s = GridSpec{};
    s.eps2 = {0.0, 1.0};
    CHECK_THROWS_AS(s.check(), Error);
    s = GridSpec{};
    s.useful = {0, 1};
    CHECK_THROWS_AS(s.check(), Error);
    CHECK_NOTHROW(GridSpec{}.check());
}

TEST_CASE("evaluate_grid rows") {
    const auto& g = default_grid();
    REQUIRE(g.rows.size() == 760);

    const auto& t1 = g.rows[row_of(g, 5, 3, 0.2, 0.3)].measures;
    CHECK(t1[Measure::Q0] == Approx(golden::kTable1Q0).epsilon(1e-13));
    CHECK(t1[Measure::Q2] == Approx(golden::kTable1Q2).epsilon(1e-13));
    CHECK(t1[Measure::Rand] == Approx(golden::kTable1Rand).epsilon(1e-13));
    CHECK(t1[Measure::Jaccard] == Approx(golden::kTable1Jaccard).epsilon(1e-13));
    CHECK(t1[Measure::FowlkesMallows] == Approx(golden::kTable1FowlkesMallows).epsilon(1e-13));
    CHECK(t1[Measure::Gamma] == Approx(golden::kTable1Gamma).epsilon(1e-12));
    CHECK(t1[Measure::Hamming] == Approx(golden::kTable1Hamming).epsilon(1e-13));

    const auto& perfect = g.rows[row_of(g, 5, 0, 0.0, 0.0)].measures;
    CHECK(perfect[Measure::Q0] == Approx(golden::kFiveClassQ0Min).epsilon(1e-13));
    for (Measure m : kReportOrder)
        if (m != Measure::Q0)
            CHECK(perfect[m] == Approx(1.0).epsilon(1e-12));

    for (const auto& row : g.rows) {
        CHECK_FALSE(row.measures.any_degenerate());
        CHECK(row.measures[Measure::Q2] >= 0.0);
        CHECK(row.measures[Measure::Q2] <= 1.0 + 1e-12);
    }
}

TEST_CASE("grid lookup by point") {
    const auto& g = default_grid();
    for (std::size_t i = 0; i < g.rows.size(); ++i)
        CHECK(g.find(g.rows[i].point) == i);
    CHECK_FALSE(g.find(GridPoint{0, 0, 0, 1}).has_value()); // no noise, eps2 > 0
    CHECK_FALSE(g.find(GridPoint{99, 0, 0, 0}).has_value());
}

TEST_CASE("evaluate_grid does not depend on the thread count") {
    auto one = evaluate_grid(GridSpec{}, PairConvention::Continuous, 1);
    auto many = evaluate_grid(GridSpec{}, PairConvention::Continuous, 7);
    REQUIRE(one.rows.size() == many.rows.size());
    for (std::size_t i = 0; i < one.rows.size(); ++i) {
        CHECK(one.rows[i].params == many.rows[i].params);
        CHECK(bitwise_equal(one.rows[i].measures, many.rows[i].measures));
    }
}

TEST_CASE("P1 counts one violation per sequence over |K_u|") {
    auto r = check_p1(default_grid());
    CHECK(r.sequences_tested == 76);
    CHECK(r[Measure::Q2].count() == 0);
    CHECK(r[Measure::Q0].count() == 0);
    CHECK(r[Measure::Rand].count() == 12);
    CHECK(r[Measure::Hamming].count() == 2);
    CHECK(r[Measure::Jaccard].count() == 0);
    CHECK(r[Measure::FowlkesMallows].count() == 0);
    CHECK(r[Measure::Gamma].count() == 0);

    const auto& g = default_grid();
    for (const auto& s : r[Measure::Hamming].sequences) {
        REQUIRE(s.steps.size() == 1);
        CHECK(g.rows[s.steps[0].from_row].params.useful_clusters == 10);
        CHECK(g.rows[s.steps[0].to_row].params.useful_clusters == 11);
        CHECK(std::abs(s.steps[0].delta) <= kStrictTolerance);
    }
    for (const auto& s : r[Measure::Rand].sequences) {
        auto peak = g.rows[s.peak_row].params.useful_clusters;
        CHECK((peak == 6 || peak == 7));
        CHECK(g.rows[s.peak_row].params.eps1 == 0.2);
        CHECK(g.rows[s.peak_row].params.eps2 >= 0.2);
    }
    // Consecutive-step instances are also available.
    CHECK(r[Measure::Rand].step_count() == 24);
}

TEST_CASE("P2 matches the published table") {
    auto r = check_p2(default_grid());
    CHECK(r.sequences_tested == 120);
    CHECK(r[Measure::Q2].count() == 0);
    CHECK(r[Measure::Q0].count() == 0);
    CHECK(r[Measure::Rand].count() == 120);
    CHECK(r[Measure::Gamma].count() == 120);
    CHECK(r[Measure::Hamming].count() == 120);
    CHECK(r[Measure::FowlkesMallows].count() == 102);
    CHECK(r[Measure::Jaccard].count() == 76);
    for (const auto& s : r[Measure::Hamming].sequences)
        for (const auto& st : s.steps)
            CHECK(std::abs(st.delta) <= kStrictTolerance);
}

TEST_CASE("P3 checks") {
    const auto& g = default_grid();
    auto e1 = check_p3_eps1(g);
    for (Measure m : kReportOrder)
        CHECK(e1[m].count() == 0);

    auto e2 = check_p3_eps2(g);
    CHECK(e2[Measure::Q2].count() == 0);
    CHECK(e2[Measure::Rand].count() == 28);
    std::size_t at_three = 0;
    for (const auto& s : e2[Measure::Rand].sequences) {
        auto ku = g.rows[s.rows.front()].params.useful_clusters;
        CHECK(ku < 4);
        at_three += ku == 3;
    }
    CHECK(at_three == 4);
    for (Measure m : {Measure::Q0, Measure::Jaccard, Measure::FowlkesMallows, Measure::Gamma,
                      Measure::Hamming})
        CHECK(e2[m].count() == 0);
}

TEST_CASE("violation report splits P1") {
    auto r = check_all(default_grid());
    CHECK(r.p1_below_count(Measure::Rand) + r.p1_above_count(Measure::Rand) >= 12);
    CHECK(r.p1_above_count(Measure::Hamming) == 2);
    CHECK(r.p1_below_count(Measure::Hamming) == 0);
    CHECK(r.p2[Measure::Rand].count() == 120);
}

TEST_CASE("violation counts do not depend on evaluation order") {
    auto a = check_all(evaluate_grid(GridSpec{}, PairConvention::Continuous, 1));
    auto b = check_all(evaluate_grid(GridSpec{}, PairConvention::Continuous, 5));
    for (Measure m : kReportOrder) {
        CHECK(a.p1[m].count() == b.p1[m].count());
        CHECK(a.p2[m].count() == b.p2[m].count());
        CHECK(a.p3_1[m].count() == b.p3_1[m].count());
        CHECK(a.p3_2[m].count() == b.p3_2[m].count());
    }
}

TEST_CASE("rounded pair-count convention is evaluated separately") {
    auto rounded = evaluate_grid(GridSpec{}, PairConvention::RoundedCells);
    REQUIRE(rounded.rows.size() == 760);
    const auto& cont = default_grid();
    // Information measures do not use pair counts.
    for (std::size_t i = 0; i < 760; ++i) {
        CHECK(rounded.rows[i].measures[Measure::Q0] == cont.rows[i].measures[Measure::Q0]);
        CHECK(rounded.rows[i].measures[Measure::Hamming] == cont.rows[i].measures[Measure::Hamming]);
    }
    // Integral expected tables are unaffected.
    auto t1 = row_of(cont, 5, 3, 0.2, 0.3);
    CHECK(rounded.rows[t1].measures[Measure::FowlkesMallows] ==
          Approx(cont.rows[t1].measures[Measure::FowlkesMallows]).epsilon(1e-14));
}

TEST_CASE("average ranks") {
    std::vector<double> v{3.0, 1.0, 3.0, 2.0};
    CHECK(average_ranks(v, false) == std::vector<double>{3.5, 1.0, 3.5, 2.0});
    CHECK(average_ranks(v, true) == std::vector<double>{1.5, 4.0, 1.5, 3.0});
    std::vector<double> same(3, 7.0);
    CHECK(average_ranks(same, true) == std::vector<double>{2.0, 2.0, 2.0});
}

TEST_CASE("spearman") {
    std::vector<double> a{1, 2, 3, 4}, b{4, 3, 2, 1}, c{1, 3, 2, 4};
    CHECK(spearman(a, a) == Approx(1.0));
    CHECK(spearman(a, b) == Approx(-1.0));
    CHECK(spearman(a, c) == Approx(0.8));
    std::vector<double> flat{2, 2, 2, 2};
    CHECK_THROWS_AS(spearman(a, flat), Error);
}

TEST_CASE("rank table on the default grid") {
    const auto& g = default_grid();
    auto ranks = rank_table(g);
    CHECK(ranks[Measure::Q2] == ranks[Measure::Q0]);

    auto perfect = row_of(g, 5, 0, 0.0, 0.0);
    for (Measure m : kReportOrder)
        CHECK(ranks[m][perfect] == 1.0);

    for (Measure m : {Measure::Rand, Measure::Jaccard, Measure::FowlkesMallows, Measure::Gamma,
                      Measure::Hamming}) {
        double rho = spearman(ranks[m], ranks[Measure::Q2]);
        CHECK(rho > 0.0);
        CHECK(rho < 1.0);
    }
}

TEST_CASE("conditional entropy grows with eps1; model cost follows the column sums") {
    const auto& g = default_grid();
    for (const auto& row : g.rows) {
        auto next = row.point;
        ++next.eps1;
        auto j = g.find(next);
        if (!j)
            continue;
        auto a = expected_table(build_joint(row.params), g.spec.n);
        auto b = expected_table(build_joint(g.rows[*j].params), g.spec.n);
        CHECK(empirical_conditional_entropy(b) > empirical_conditional_entropy(a));

        bool same_columns = true;
        for (std::size_t k = 0; k < a.num_clusters(); ++k)
            same_columns = same_columns && std::abs(a.col_marginal()[k] - b.col_marginal()[k]) < 1e-9;
        if (same_columns)
            CHECK(table_code_length(a) == Approx(table_code_length(b)).epsilon(1e-12));
        if (row.params.useful_clusters == g.spec.num_classes)
            CHECK(same_columns);
    }
}

TEST_CASE("eps1 sweep") {
    SweepSpec spec;
    REQUIRE(spec.eps1.size() == 17);
    CHECK(spec.eps1.back() == 0.8);
    auto sweep = sweep_eps1(spec);
    REQUIRE(sweep.size() == 17);

    for (Measure m : kReportOrder) {
        if (m != Measure::Q0)
            CHECK(sweep.front().measures[m] == Approx(1.0).epsilon(1e-9));
        for (std::size_t i = 1; i < sweep.size(); ++i) {
            double d = sweep[i].measures[m] - sweep[i - 1].measures[m];
            if (higher_is_better(m))
                CHECK(d < -kStrictTolerance);
            else
                CHECK(d > kStrictTolerance);
        }
    }
    CHECK(sweep.front().measures[Measure::Q0] == Approx(golden::kFiveClassQ0Min).epsilon(1e-13));
    const auto& end = sweep.back().measures;
    CHECK(end[Measure::Q0] == Approx(golden::kSweepEndQ0).epsilon(1e-13));
    CHECK(end[Measure::Q2] == Approx(golden::kSweepEndQ2).epsilon(1e-13));
    CHECK(end[Measure::Hamming] == Approx(0.2).epsilon(1e-12));

    SweepSpec bad;
    bad.eps1 = {0.5, 0.9};
    CHECK_THROWS_AS(sweep_eps1(bad), Error);
}
