#include "extval/characterization.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

#include "extval/error.hpp"
#include "extval/tables.hpp"

namespace extval {

const char* to_string(PairConvention c) {
    return c == PairConvention::Continuous ? "continuous" : "rounded_cells";
}

namespace {

template <class T>
void check_list(const std::vector<T>& xs, const char* name, auto&& in_domain) {
    if (xs.empty())
        throw Error(ErrorKind::InvalidParameter, std::string("grid: ") + name + " list is empty");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!in_domain(xs[i]))
            throw Error(ErrorKind::InvalidParameter, std::string("grid: ") + name + " value out of range");
        if (i > 0 && !(xs[i - 1] < xs[i]))
            throw Error(ErrorKind::InvalidParameter,
                        std::string("grid: ") + name + " list must be strictly ascending");
    }
}

bool unit_interval(double e) { return std::isfinite(e) && e >= 0.0 && e < 1.0; }

ModelParams params_at(const GridSpec& s, const GridPoint& p) {
    return ModelParams{s.num_classes, s.useful[p.useful], s.noise[p.noise], s.eps1[p.eps1],
                       s.eps2[p.eps2]};
}

template <class F>
void for_each_point(const GridSpec& s, F&& f) {
    for (std::size_t u = 0; u < s.useful.size(); ++u)
        for (std::size_t k = 0; k < s.noise.size(); ++k)
            for (std::size_t a = 0; a < s.eps1.size(); ++a)
                for (std::size_t b = 0; b < s.eps2.size(); ++b)
                    f(GridPoint{u, k, a, b});
}

std::size_t dense_index(const GridSpec& s, const GridPoint& p) {
    return ((p.useful * s.noise.size() + p.noise) * s.eps1.size() + p.eps1) * s.eps2.size() + p.eps2;
}

} // namespace

void GridSpec::check() const {
    if (num_classes < 1)
        throw Error(ErrorKind::InvalidParameter, "grid: need at least one class");
    if (n < 1)
        throw Error(ErrorKind::InvalidParameter, "grid: n must be positive");
    check_list(useful, "useful", [](std::size_t v) { return v >= 1; });
    check_list(noise, "noise", [](std::size_t) { return true; });
    check_list(eps1, "eps1", unit_interval);
    check_list(eps2, "eps2", unit_interval);
}

std::optional<std::size_t> GridResult::find(const GridPoint& p) const {
    if (p.useful >= spec.useful.size() || p.noise >= spec.noise.size() ||
        p.eps1 >= spec.eps1.size() || p.eps2 >= spec.eps2.size())
        return std::nullopt;
    auto i = index_[dense_index(spec, p)];
    if (i < 0)
        return std::nullopt;
    return static_cast<std::size_t>(i);
}

std::vector<ModelParams> enumerate_valid(const GridSpec& spec) {
    spec.check();
    std::vector<ModelParams> out;
    for_each_point(spec, [&](const GridPoint& p) {
        auto params = params_at(spec, p);
        if (validate(params))
            out.push_back(params);
    });
    return out;
}

MeasureVector evaluate_params(const ModelParams& params, std::size_t n, PairConvention convention) {
    auto table = expected_table(build_joint(params), n);
    if (convention == PairConvention::Continuous)
        return all_measures(table);
    return all_measures(table, pair_counts_from_table(rounded_table(table)));
}

GridResult evaluate_grid(const GridSpec& spec, PairConvention convention, unsigned threads) {
    spec.check();
    GridResult result;
    result.spec = spec;
    result.convention = convention;
    result.index_.assign(spec.useful.size() * spec.noise.size() * spec.eps1.size() * spec.eps2.size(),
                         -1);
    for_each_point(spec, [&](const GridPoint& p) {
        auto params = params_at(spec, p);
        if (!validate(params))
            return;
        result.index_[dense_index(spec, p)] = static_cast<std::ptrdiff_t>(result.rows.size());
        result.rows.push_back(GridRow{p, params, {}});
    });

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, result.rows.size())));

    // Each worker writes only the rows it claims; row order is fixed above.
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < result.rows.size(); i = next++)
            result.rows[i].measures = evaluate_params(result.rows[i].params, spec.n, convention);
    };
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work);
    }
    return result;
}

std::size_t MeasureViolations::step_count() const {
    std::size_t total = 0;
    for (const auto& s : sequences)
        total += s.steps.size();
    return total;
}

namespace {

double oriented(const GridRow& row, Measure m) {
    double v = row.measures[m];
    return higher_is_better(m) ? v : -v;
}

enum class Expect { Increase, Decrease, Skip };

// Collects the sequences along one axis. `key` projects a point onto the
// fixed coordinates, `axis` reads the varying coordinate and `expect` says
// what a step from one row to the next must do.
CheckReport check_axis(const GridResult& result, std::string name,
                       const std::function<GridPoint(const GridPoint&)>& key,
                       const std::function<std::size_t(const GridPoint&)>& axis,
                       const std::function<Expect(const GridRow&, const GridRow&)>& expect) {
    CheckReport report;
    report.name = std::move(name);

    std::vector<std::vector<std::size_t>> sequences;
    std::vector<GridPoint> keys;
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        GridPoint k = key(result.rows[i].point);
        auto it = std::find(keys.begin(), keys.end(), k);
        if (it == keys.end()) {
            keys.push_back(k);
            sequences.push_back({i});
        } else {
            sequences[static_cast<std::size_t>(it - keys.begin())].push_back(i);
        }
    }

    for (auto& seq : sequences) {
        std::sort(seq.begin(), seq.end(), [&](std::size_t a, std::size_t b) {
            return axis(result.rows[a].point) < axis(result.rows[b].point);
        });
        bool tested = false;
        std::array<SequenceViolation, kNumMeasures> found;
        for (std::size_t s = 0; s + 1 < seq.size(); ++s) {
            const GridRow& from = result.rows[seq[s]];
            const GridRow& to = result.rows[seq[s + 1]];
            Expect e = expect(from, to);
            if (e == Expect::Skip)
                continue;
            tested = true;
            ++report.steps_tested;
            for (Measure m : kReportOrder) {
                double gain = oriented(to, m) - oriented(from, m);
                bool ok = e == Expect::Increase ? gain > kStrictTolerance : gain < -kStrictTolerance;
                if (!ok)
                    found[static_cast<std::size_t>(m)].steps.push_back(
                        {seq[s], seq[s + 1], to.measures[m] - from.measures[m], e == Expect::Increase});
            }
        }
        if (!tested)
            continue;
        ++report.sequences_tested;
        for (Measure m : kReportOrder) {
            auto& v = found[static_cast<std::size_t>(m)];
            if (v.steps.empty())
                continue;
            v.rows = seq;
            v.peak_row = *std::max_element(seq.begin(), seq.end(), [&](std::size_t a, std::size_t b) {
                return oriented(result.rows[a], m) < oriented(result.rows[b], m);
            });
            report.by_measure[static_cast<std::size_t>(m)].sequences.push_back(std::move(v));
        }
    }
    return report;
}

Expect always_decrease(const GridRow&, const GridRow&) { return Expect::Decrease; }

} // namespace

CheckReport check_p1(const GridResult& result) {
    const std::size_t classes = result.spec.num_classes;
    return check_axis(
        result, "P1",
        [](const GridPoint& p) { return GridPoint{0, p.noise, p.eps1, p.eps2}; },
        [](const GridPoint& p) { return p.useful; },
        [classes](const GridRow& from, const GridRow& to) {
            std::size_t a = from.params.useful_clusters;
            std::size_t b = to.params.useful_clusters;
            if (a >= classes)
                return Expect::Decrease;
            return b <= classes ? Expect::Increase : Expect::Skip;
        });
}

CheckReport check_p2(const GridResult& result) {
    return check_axis(
        result, "P2",
        [](const GridPoint& p) { return GridPoint{p.useful, 0, p.eps1, p.eps2}; },
        [](const GridPoint& p) { return p.noise; },
        [](const GridRow& from, const GridRow&) {
            return from.params.eps2 > 0.0 ? Expect::Decrease : Expect::Skip;
        });
}

CheckReport check_p3_eps1(const GridResult& result) {
    return check_axis(
        result, "P3.1",
        [](const GridPoint& p) { return GridPoint{p.useful, p.noise, 0, p.eps2}; },
        [](const GridPoint& p) { return p.eps1; }, always_decrease);
}

CheckReport check_p3_eps2(const GridResult& result) {
    return check_axis(
        result, "P3.2",
        [](const GridPoint& p) { return GridPoint{p.useful, p.noise, p.eps1, 0}; },
        [](const GridPoint& p) { return p.eps2; }, always_decrease);
}

namespace {

std::size_t count_kind(const CheckReport& r, Measure m, bool increase) {
    std::size_t n = 0;
    for (const auto& s : r[m].sequences)
        if (std::any_of(s.steps.begin(), s.steps.end(),
                        [&](const StepViolation& v) { return v.expected_increase == increase; }))
            ++n;
    return n;
}

} // namespace

std::size_t ViolationReport::p1_below_count(Measure m) const { return count_kind(p1, m, true); }
std::size_t ViolationReport::p1_above_count(Measure m) const { return count_kind(p1, m, false); }

ViolationReport check_all(const GridResult& result) {
    ViolationReport r;
    r.convention = result.convention;
    r.p1 = check_p1(result);
    r.p2 = check_p2(result);
    r.p3_1 = check_p3_eps1(result);
    r.p3_2 = check_p3_eps2(result);
    return r;
}

std::vector<double> average_ranks(std::span<const double> values, bool descending) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return descending ? values[a] > values[b] : values[a] < values[b];
    });
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i + 1;
        while (j < order.size() && values[order[j]] == values[order[i]])
            ++j;
        // positions i..j-1 share ranks i+1..j
        double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t)
            ranks[order[t]] = avg;
        i = j;
    }
    return ranks;
}

double spearman(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2)
        throw Error(ErrorKind::DegenerateInput, "spearman: need two equal-length vectors of size >= 2");
    double n = static_cast<double>(a.size());
    double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (!(saa > 0.0) || !(sbb > 0.0))
        throw Error(ErrorKind::DegenerateInput, "spearman: constant rank vector");
    return sab / std::sqrt(saa * sbb);
}

RankTable rank_table(const GridResult& result) {
    RankTable t;
    std::vector<double> values(result.rows.size());
    for (Measure m : kReportOrder) {
        for (std::size_t i = 0; i < result.rows.size(); ++i)
            values[i] = result.rows[i].measures[m];
        t.ranks[static_cast<std::size_t>(m)] = average_ranks(values, higher_is_better(m));
    }
    return t;
}

std::vector<double> SweepSpec::default_eps1() {
    std::vector<double> out;
    for (int i = 0; i <= 16; ++i)
        out.push_back(static_cast<double>(i) / 20.0);
    return out;
}

void SweepSpec::check() const {
    check_list(eps1, "eps1", [](double e) { return std::isfinite(e) && e >= 0.0 && e <= 0.8; });
    if (n < 1)
        throw Error(ErrorKind::InvalidParameter, "sweep: n must be positive");
}

std::vector<SweepPoint> sweep_eps1(const SweepSpec& spec) {
    spec.check();
    std::vector<SweepPoint> out;
    out.reserve(spec.eps1.size());
    for (double e : spec.eps1) {
        ModelParams p{spec.num_classes, spec.useful, spec.noise, e, 0.0};
        out.push_back({e, evaluate_params(p, spec.n)});
    }
    return out;
}

} // namespace extval
