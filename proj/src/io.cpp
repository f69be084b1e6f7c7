#include "extval/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "extval/error.hpp"

namespace extval {

using json = Json;

std::string format_number(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (v == 0.0)
        v = 0.0; // drop the sign of -0
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, end);
}

double round_for_output(double v) {
    if (!std::isfinite(v))
        return v;
    std::string s = format_number(v);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

namespace {

json number(double v) {
    if (!std::isfinite(v))
        return nullptr;
    return round_for_output(v);
}

std::string trim(std::string s) {
    auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

} // namespace

Labeling read_labels_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::vector<std::string> classes, clusters;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (trim(line).empty())
            continue;
        auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            parse_error(lineno, "expected exactly two comma-separated fields");
        std::string a = trim(line.substr(0, comma));
        std::string b = trim(line.substr(comma + 1));
        if (!header) {
            if (a != "class" || b != "cluster")
                parse_error(lineno, "expected header 'class,cluster'");
            header = true;
            continue;
        }
        if (a.empty() || b.empty())
            parse_error(lineno, "empty label");
        classes.push_back(std::move(a));
        clusters.push_back(std::move(b));
    }
    if (!header)
        parse_error(lineno == 0 ? 1 : lineno, "missing header 'class,cluster'");
    if (classes.empty())
        throw Error(ErrorKind::EmptyInput, "line " + std::to_string(lineno + 1) + ": no objects");
    return Labeling::from_strings(classes, clusters);
}

json to_json(const ContingencyTable& t) {
    json counts = json::array();
    for (std::size_t c = 0; c < t.num_classes(); ++c) {
        json row = json::array();
        for (std::size_t k = 0; k < t.num_clusters(); ++k)
            row.push_back(number(t.at(c, k)));
        counts.push_back(std::move(row));
    }
    return json{{"n", number(t.n())},
                {"counts", std::move(counts)},
                {"class_labels", t.class_labels()},
                {"cluster_labels", t.cluster_labels()}};
}

json to_json(const QScores& s) {
    return json{{"h_cond_bits", number(s.h_cond)},
                {"model_cost_bits_per_obj", number(s.model_cost_per_object)},
                {"q0", number(s.q0)},
                {"q0_min", number(s.q0_min)},
                {"q0_max", number(s.q0_max)},
                {"q2", s.q2 ? number(*s.q2) : json(nullptr)},
                {"mutual_information_bits", number(s.mutual_information)}};
}

json to_json(const MeasureVector& mv) {
    json values = json::object();
    json flagged = json::array();
    for (Measure m : kReportOrder) {
        std::string key(measure_key(m));
        values[key] = mv.is_degenerate(m) && !std::isfinite(mv[m]) ? nullptr : number(mv[m]);
        if (mv.is_degenerate(m))
            flagged.push_back(key);
    }
    return json{{"measures", std::move(values)}, {"degenerate", std::move(flagged)}};
}

json to_json(const JointDistribution& p) {
    json rows = json::array();
    for (std::size_t c = 0; c < p.num_classes(); ++c) {
        json row = json::array();
        for (std::size_t k = 0; k < p.num_clusters(); ++k)
            row.push_back(number(p.at(c, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const ModelParams& p) {
    return json{{"classes", p.num_classes}, {"useful", p.useful_clusters},
                {"noise", p.noise_clusters}, {"eps1", number(p.eps1)},
                {"eps2", number(p.eps2)}};
}

json to_json(const GridSpec& s) {
    json e1 = json::array(), e2 = json::array();
    for (double e : s.eps1)
        e1.push_back(number(e));
    for (double e : s.eps2)
        e2.push_back(number(e));
    return json{{"num_classes", s.num_classes}, {"n", s.n},       {"useful", s.useful},
                {"noise", s.noise},             {"eps1", e1},     {"eps2", e2}};
}

namespace {

json check_json(const CheckReport& r, const GridResult& grid) {
    json per = json::object();
    for (Measure m : kReportOrder) {
        const auto& mv = r[m];
        json seqs = json::array();
        for (const auto& s : mv.sequences) {
            json steps = json::array();
            for (const auto& st : s.steps)
                steps.push_back(json{{"from", to_json(grid.rows[st.from_row].params)},
                                     {"to", to_json(grid.rows[st.to_row].params)},
                                     {"delta", number(st.delta)},
                                     {"expected", st.expected_increase ? "increase" : "decrease"}});
            seqs.push_back(json{{"peak", to_json(grid.rows[s.peak_row].params)},
                                {"steps", std::move(steps)}});
        }
        per[std::string(measure_key(m))] =
            json{{"sequences", mv.count()}, {"steps", mv.step_count()}, {"violations", std::move(seqs)}};
    }
    return json{{"sequences_tested", r.sequences_tested},
                {"steps_tested", r.steps_tested},
                {"by_measure", std::move(per)}};
}

} // namespace

json to_json(const ViolationReport& r, const GridResult& grid) {
    json split = json::object();
    for (Measure m : kReportOrder)
        split[std::string(measure_key(m))] =
            json{{"p1_1", r.p1_below_count(m)}, {"p1_2", r.p1_above_count(m)}};
    return json{{"convention", to_string(r.convention)},
                {"rows", grid.rows.size()},
                {"P1", check_json(r.p1, grid)},
                {"P1_split", std::move(split)},
                {"P2", check_json(r.p2, grid)},
                {"P3_1", check_json(r.p3_1, grid)},
                {"P3_2", check_json(r.p3_2, grid)}};
}

namespace {

double parse_rational(const json& v, const char* key) {
    if (v.is_number())
        return v.get<double>();
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        auto slash = s.find('/');
        auto to_double = [&](std::string_view part) {
            double out = 0.0;
            auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
            if (ec != std::errc() || p != part.data() + part.size())
                throw Error(ErrorKind::Parse, std::string("grid spec: bad number in ") + key);
            return out;
        };
        std::string_view sv(s);
        if (slash == std::string::npos)
            return to_double(sv);
        double den = to_double(sv.substr(slash + 1));
        if (den == 0.0)
            throw Error(ErrorKind::Parse, std::string("grid spec: zero denominator in ") + key);
        return to_double(sv.substr(0, slash)) / den;
    }
    throw Error(ErrorKind::Parse, std::string("grid spec: expected number or \"p/q\" in ") + key);
}

} // namespace

GridSpec grid_spec_from_json(const json& j) {
    if (!j.is_object())
        throw Error(ErrorKind::Parse, "grid spec: expected a JSON object");
    GridSpec s;
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "num_classes")
                s.num_classes = v.get<std::size_t>();
            else if (key == "n")
                s.n = v.get<std::size_t>();
            else if (key == "useful")
                s.useful = v.get<std::vector<std::size_t>>();
            else if (key == "noise")
                s.noise = v.get<std::vector<std::size_t>>();
            else if (key == "eps1" || key == "eps2") {
                if (!v.is_array())
                    throw Error(ErrorKind::Parse, "grid spec: " + key + " must be an array");
                std::vector<double> xs;
                for (const auto& e : v)
                    xs.push_back(parse_rational(e, key.c_str()));
                (key == "eps1" ? s.eps1 : s.eps2) = std::move(xs);
            } else {
                throw Error(ErrorKind::Parse, "grid spec: unknown key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("grid spec: ") + e.what());
    }
    s.check();
    return s;
}

void write_grid_csv(std::ostream& out, const GridResult& grid) {
    out << "ku,kn,eps1,eps2";
    for (Measure m : kCsvOrder)
        out << ',' << measure_column(m);
    out << '\n';
    for (const auto& row : grid.rows) {
        out << row.params.useful_clusters << ',' << row.params.noise_clusters << ','
            << format_number(row.params.eps1) << ',' << format_number(row.params.eps2);
        for (Measure m : kCsvOrder)
            out << ',' << format_number(row.measures[m]);
        out << '\n';
    }
}

void write_ranks_csv(std::ostream& out, const RankTable& ranks) {
    out << "combo_index";
    for (Measure m : kCsvOrder)
        out << ',' << measure_column(m) << "_rank";
    out << '\n';
    std::size_t rows = ranks[Measure::Q0].size();
    for (std::size_t i = 0; i < rows; ++i) {
        out << i;
        for (Measure m : kCsvOrder)
            out << ',' << format_number(ranks[m][i]);
        out << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& sweep) {
    out << "eps1";
    for (Measure m : kCsvOrder)
        out << ',' << measure_column(m);
    out << '\n';
    for (const auto& p : sweep) {
        out << format_number(p.eps1);
        for (Measure m : kCsvOrder)
            out << ',' << format_number(p.measures[m]);
        out << '\n';
    }
}

void write_violation_summary(std::ostream& out, const ViolationReport& r) {
    auto pad = [](std::string s, std::size_t w) {
        if (s.size() < w)
            s.insert(0, w - s.size(), ' ');
        return s;
    };
    out << "violations (" << to_string(r.convention) << " pair counts; one per failing sequence)\n";
    out << pad("", 6);
    for (Measure m : kReportOrder)
        out << pad(std::string(measure_title(m)), 9);
    out << pad("tested", 9) << '\n';
    auto line = [&](const std::string& name, auto&& count, std::size_t tested) {
        out << pad(name, 6);
        for (Measure m : kReportOrder)
            out << pad(std::to_string(count(m)), 9);
        out << pad(std::to_string(tested), 9) << '\n';
    };
    line("P1", [&](Measure m) { return r.p1[m].count(); }, r.p1.sequences_tested);
    line("P1.1", [&](Measure m) { return r.p1_below_count(m); }, r.p1.sequences_tested);
    line("P1.2", [&](Measure m) { return r.p1_above_count(m); }, r.p1.sequences_tested);
    line("P2", [&](Measure m) { return r.p2[m].count(); }, r.p2.sequences_tested);
    line("P3.1", [&](Measure m) { return r.p3_1[m].count(); }, r.p3_1.sequences_tested);
    line("P3.2", [&](Measure m) { return r.p3_2[m].count(); }, r.p3_2.sequences_tested);
}

} // namespace extval
