#pragma once

#include "fibersym/fibration.hpp"
#include "fibersym/graphlink.hpp"
#include "fibersym/wang.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fibersym::cli {

inline constexpr const char* kFormatVersion = "1.0.0";

using json = nlohmann::json;

// --- serialization helpers -------------------------------------------------

inline json to_json(const Rational& q) { return to_string(q); }

inline json to_json(const EpsNumber& e) {
    json coeffs = json::array();
    for (const auto& c : e.coeffs()) coeffs.push_back(to_string(c));
    return json{{"coeffs", coeffs}};
}

inline json to_json(const MatrixQ& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

inline json envelope(const std::string& command, json inputs, json payload) {
    return json{{"command", command},
                {"format_version", kFormatVersion},
                {"inputs", std::move(inputs)},
                {"payload", std::move(payload)}};
}

inline std::string matrix_text(const MatrixQ& m) {
    std::vector<std::vector<std::string>> cells(static_cast<std::size_t>(m.rows()));
    std::size_t width = 1;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            cells[static_cast<std::size_t>(r)].push_back(to_string(m(r, c)));
            width = std::max(width, cells[static_cast<std::size_t>(r)].back().size());
        }
    std::ostringstream out;
    for (const auto& row : cells) {
        out << "  [";
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? " " : "") << std::setw(static_cast<int>(width)) << row[c];
        out << "]\n";
    }
    return out.str();
}

// --- command payloads --------------------------------------------------------

struct McgResult {
    json inputs, payload;
    std::string text;
};

inline const SurfaceModel& surface_by_name(const std::string& name) {
    if (name == "torus4") return SurfaceModel::torus4();
    if (name == "sphere4") return SurfaceModel::sphere4();
    throw std::invalid_argument("unknown surface '" + name + "' (expected torus4 or sphere4)");
}

inline json census_json(const JordanCensus& census) {
    json blocks = json::object();
    for (const auto& [size, count] : census.blocks_of_size)
        blocks[std::to_string(size)] = count;
    json dims = json::array();
    for (auto d : census.filtration_dims) dims.push_back(d);
    return json{{"eigenvalue", to_string(census.eigenvalue)},
                {"filtration_dims", dims},
                {"blocks_of_size", blocks},
                {"nu2", census.nu2}};
}

inline McgResult run_mcg(const std::string& surface_name, const std::string& word_text) {
    const SurfaceModel& surface = surface_by_name(surface_name);
    MCGWord word = parse_word(word_text, surface);
    HomologyAction action = evaluate_word(word);
    const Eigen::Index n = surface.h1_rank;
    MatrixQ fm1 = action.on_h1 - MatrixQ::Identity(n, n);
    JordanCensus census = jordan_census(fm1, Rational(0));
    Subspace ker = kernel_basis(fm1);
    Subspace im = image_basis(fm1);
    bool torelli = is_torelli(word);

    McgResult r;
    r.inputs = json{{"surface", surface_name}, {"word", word_text}};
    r.payload = json{{"on_h1", to_json(action.on_h1)},
                     {"fstar_minus_1", to_json(fm1)},
                     {"jordan", census_json(census)},
                     {"kernel_basis", to_json(ker.basis())},
                     {"image_basis", to_json(im.basis())},
                     {"torelli", torelli}};
    std::ostringstream out;
    out << "surface: " << surface_name << "\nword: " << (word_text.empty() ? "(empty)" : word_text)
        << "\n\naction on H1:\n"
        << matrix_text(action.on_h1) << "\nf* - 1:\n"
        << matrix_text(fm1) << "\njordan blocks at eigenvalue 1 of f*:";
    for (const auto& [size, count] : census.blocks_of_size)
        out << " " << count << " x size " << size;
    out << "  (nu2 = " << census.nu2 << ")\n";
    out << "ker(f*-1): dim " << ker.dim() << "\n" << matrix_text(ker.basis());
    out << "Im(f*-1): dim " << im.dim() << "\n" << matrix_text(im.basis());
    out << "torelli: " << (torelli ? "true" : "false") << "\n";
    r.text = out.str();
    return r;
}

inline McgResult run_cohomology(const std::string& surface_name, const std::string& word_text,
                                const std::optional<std::vector<Rational>>& eta_lambdas) {
    const SurfaceModel& surface = surface_by_name(surface_name);
    MCGWord word = parse_word(word_text, surface);
    HomologyAction action = evaluate_word(word);
    FiberedFourManifold manifold(surface, action.on_h1_dual);

    std::optional<EtaClass> eta;
    std::string eta_case = "none";
    if (eta_lambdas) {
        eta = make_eta(manifold, *eta_lambdas);
        Eigen::Index s = 0;
        while (s < static_cast<Eigen::Index>(eta->jordan_sizes.size()) &&
               eta->jordan_sizes[static_cast<std::size_t>(s)] == 1)
            ++s;
        eta_case = "kernel_supported";
        for (std::size_t i = static_cast<std::size_t>(s); i < eta->lambdas.size(); ++i)
            if (eta->lambdas[i] != 0) eta_case = "deformed";
    }
    BettiReport report = primitive_betti(manifold, eta);

    McgResult r;
    json eta_json = nullptr;
    if (eta_lambdas) {
        json ls = json::array();
        for (const auto& l : *eta_lambdas) ls.push_back(to_string(l));
        eta_json = ls;
    }
    r.inputs = json{{"surface", surface_name}, {"word", word_text}, {"eta", eta_json}};
    json sizes = json::array();
    if (eta)
        for (auto s : eta->jordan_sizes) sizes.push_back(s);
    r.payload = json{{"b", report.b},
                     {"bY", report.bY},
                     {"p_plus", report.p_plus},
                     {"p_minus", report.p_minus},
                     {"nu2", report.nu2},
                     {"chi_p", report.chi_p},
                     {"eta_case", eta_case},
                     {"jordan_sizes", sizes}};
    std::ostringstream out;
    out << "surface: " << surface_name << "\nword: " << (word_text.empty() ? "(empty)" : word_text)
        << "\n\nb(X)  = (" << report.b[0];
    for (int i = 1; i < 5; ++i) out << ", " << report.b[i];
    out << ")\nb(Y)  = (" << report.bY[0];
    for (int i = 1; i < 4; ++i) out << ", " << report.bY[i];
    out << ")\np^+   = (" << report.p_plus[0] << ", " << report.p_plus[1] << ", "
        << report.p_plus[2] << ")\np^-   = (" << report.p_minus[0] << ", " << report.p_minus[1]
        << ", " << report.p_minus[2] << ")\nnu2   = " << report.nu2
        << "\nchi_p = " << report.chi_p << "\neta case: " << eta_case << "\n";
    r.text = out.str();
    return r;
}

inline const char* relation_name(Relation rel) {
    switch (rel) {
        case Relation::above: return "above";
        case Relation::below: return "below";
        case Relation::through_start: return "through_start";
    }
    return "?";
}

inline McgResult run_crossings(long a1, long a2, long a3) {
    FibrationFrame frame{a1, a2, a3};
    auto paths = puncture_paths(frame);
    if (!verify_disjoint_strands(paths))
        throw std::domain_error("strands are not disjoint for this frame");
    auto locations = relative_locations(paths);
    CrossingTable table = crossing_table(paths);

    McgResult r;
    r.inputs = json{{"v1", json::array({a1, a2, a3})}};
    json jpaths = json::array();
    for (const auto& p : paths)
        jpaths.push_back(json{{"label", p.label},
                              {"start", json::array({to_json(p.start.x), to_json(p.start.y)})},
                              {"velocity", json::array({p.velocity[0], p.velocity[1]})}});
    json jlocs = json::array();
    for (const auto& loc : locations)
        jlocs.push_back(json{{"mover", loc.mover},
                             {"anchor", loc.anchor},
                             {"relation", relation_name(loc.relation)},
                             {"time", to_json(loc.time)}});
    auto event_json = [](const CrossingEvent& ev) {
        return json{{"pair", json::array({ev.i, ev.j})},
                    {"times", json::array({to_json(ev.t_i), to_json(ev.t_j)})},
                    {"over", ev.over},
                    {"event_time", to_json(ev.event_time)},
                    {"coincident_duplicate", ev.coincident_duplicate}};
    };
    json jrows = json::array(), jstarts = json::array();
    for (const auto& ev : table.rows) jrows.push_back(event_json(ev));
    for (const auto& ev : table.start_incidences) jstarts.push_back(event_json(ev));
    r.payload = json{{"paths", jpaths},
                     {"relative_locations", jlocs},
                     {"crossings", jrows},
                     {"start_incidences", jstarts},
                     {"determinant", frame.det()}};

    std::ostringstream out;
    out << "v1 = (" << a1 << ", " << a2 << ", " << a3 << "), A = " << frame.det() << "\n\npaths:\n";
    for (const auto& p : paths)
        out << "  y" << p.label << ": start (" << p.start.x.str() << ", " << p.start.y.str()
            << ")  velocity (" << p.velocity[0] << ", " << p.velocity[1] << ")\n";
    out << "\nrelative locations:\n";
    for (const auto& loc : locations)
        out << "  y" << loc.mover << " " << relation_name(loc.relation) << " y" << loc.anchor
            << "-start at t = " << loc.time.str() << "\n";
    out << "\ncrossings (in order):\n";
    for (const auto& ev : table.rows) {
        out << "  (y" << ev.i << ", y" << ev.j << ")  t = " << ev.event_time.str() << "  y"
            << ev.over << " over y" << (ev.over == ev.i ? ev.j : ev.i);
        if (ev.coincident_duplicate) out << "  [coincident duplicate collapsed]";
        out << "\n";
    }
    if (!table.start_incidences.empty()) {
        out << "\nstart incidences (excluded from the table):\n";
        for (const auto& ev : table.start_incidences)
            out << "  (y" << ev.i << ", y" << ev.j << ")  times (" << ev.t_i.str() << ", "
                << ev.t_j.str() << ")\n";
    }
    r.text = out.str();
    return r;
}

inline std::string poly_text(const std::vector<Integer>& coeffs) {
    if (coeffs.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        const Integer& c = coeffs[k];
        if (c == 0) continue;
        Integer mag = c < 0 ? Integer(-c) : c;
        if (!first) out << (c < 0 ? " - " : " + ");
        else if (c < 0) out << "-";
        first = false;
        if (k == 0 || mag != 1) out << mag.str();
        if (k >= 1) out << "t";
        if (k >= 2) out << "^" << k;
    }
    if (first) out << "0";
    return out.str();
}

inline McgResult run_graphlink(long n, long long m1, long long m2) {
    GraphLinkSpec spec = make_graph_link_spec(n, Integer(m1), Integer(m2));
    GcdData g = gcd_data(spec);
    CycloProduct cp = delta_prime(spec);
    JordanSize2Data j2 = jordan_size2_data(spec);
    P2Offsets offsets = p2_offsets(spec);

    McgResult r;
    r.inputs = json{{"n", n}, {"m1", m1}, {"m2", m2}};
    json jde = json::array(), jdv = json::array();
    for (const auto& v : g.dE) jde.push_back(v.str());
    for (const auto& v : g.dV) jdv.push_back(v.str());
    json jfac = json::array();
    for (const auto& [e, m] : cp.factors)
        jfac.push_back(json{{"exponent", e}, {"multiplicity", m}});
    json jexp = json::array();
    for (const auto& c : cp.expansion) jexp.push_back(c.str());
    json jroots = json::object();
    for (const auto& [idx, m] : j2.root_multiplicities) jroots[std::to_string(idx)] = m;
    r.payload = json{{"valid", true},
                     {"d", spec.d.str()},
                     {"dE", jde},
                     {"dV", jdv},
                     {"delta_factors", jfac},
                     {"delta_expansion", jexp},
                     {"degree", cp.degree},
                     {"root_multiplicities", jroots},
                     {"p2_plus_minus_b2", offsets.p2_plus_minus_b2},
                     {"p2_minus_minus_b2", offsets.p2_minus_minus_b2},
                     {"theorem_case",
                      offsets.theorem_case ? json(theorem_case_label(*offsets.theorem_case))
                                           : json(nullptr)}};
    std::ostringstream out;
    out << "K^(2n) with n = " << n << ", fibration (m1, m2) = (" << m1 << ", " << m2
        << ")  [valid]\n";
    out << "d = " << spec.d.str() << "\ndE = (";
    for (std::size_t k = 0; k < g.dE.size(); ++k) out << (k ? ", " : "") << g.dE[k].str();
    out << ")\ndV = (";
    for (std::size_t k = 0; k < g.dV.size(); ++k) out << (k ? ", " : "") << g.dV[k].str();
    out << ")\ndelta'(t) = " << poly_text(cp.expansion) << "   (degree " << cp.degree << ")\n";
    out << "p2+ - b2 = " << offsets.p2_plus_minus_b2
        << "\np2- - b2 = " << offsets.p2_minus_minus_b2 << "\n";
    if (offsets.theorem_case)
        out << "coprime case: " << theorem_case_label(*offsets.theorem_case) << "\n";
    r.text = out.str();
    return r;
}

// --- driver ------------------------------------------------------------------

inline std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        out.push_back(rational_from_string(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact invariants of fibered symplectic 4-manifolds"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit machine-readable JSON");
    app.fallthrough();

    std::string surface, word, eta_text, v1_text;
    long gl_n = 0;
    long long gl_m1 = 0, gl_m2 = 0;

    auto* mcg = app.add_subcommand("mcg", "homology action and Jordan data of a monodromy word");
    mcg->add_option("--surface", surface, "torus4 or sphere4")->required();
    mcg->add_option("--word", word, "generator word, e.g. \"t3^-1 r1 C12\"")->required();

    auto* coh = app.add_subcommand("cohomology", "Betti and primitive Betti numbers");
    coh->add_option("--surface", surface, "torus4 or sphere4")->required();
    coh->add_option("--word", word, "generator word")->required();
    coh->add_option("--eta", eta_text, "lambda coefficients, comma separated, census order");

    auto* cross = app.add_subcommand("crossings", "puncture paths and ordered crossing table");
    cross->add_option("--v1", v1_text, "integer triple a1,a2,a3")->required();

    auto* gl = app.add_subcommand("graphlink", "graph-link fibration invariants");
    gl->add_option("--n", gl_n, "half the number of nodes")->required();
    gl->add_option("--m1", gl_m1, "first fibration coefficient")->required();
    gl->add_option("--m2", gl_m2, "second fibration coefficient")->required();

    std::reverse(args.begin(), args.end());  // CLI11 consumes reversed argv
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        std::ostringstream sink;
        int code = app.exit(e, sink, sink);
        (code == 0 ? out : err) << sink.str();
        return code;
    }

    try {
        McgResult result;
        std::string command;
        if (*mcg) {
            command = "mcg";
            result = run_mcg(surface, word);
        } else if (*coh) {
            command = "cohomology";
            std::optional<std::vector<Rational>> eta;
            if (!coh->get_option("--eta")->empty()) eta = parse_rational_list(eta_text);
            result = run_cohomology(surface, word, eta);
        } else if (*cross) {
            command = "crossings";
            auto triple = parse_rational_list(v1_text);
            if (triple.size() != 3 || !is_integer(triple[0]) || !is_integer(triple[1]) ||
                !is_integer(triple[2]))
                throw std::invalid_argument("--v1 expects three integers a1,a2,a3");
            result = run_crossings(triple[0].convert_to<long>(), triple[1].convert_to<long>(),
                                   triple[2].convert_to<long>());
        } else {
            command = "graphlink";
            result = run_graphlink(gl_n, gl_m1, gl_m2);
        }
        if (as_json)
            out << envelope(command, result.inputs, result.payload).dump(2) << "\n";
        else
            out << result.text;
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args), out, err);
}

}  // namespace fibersym::cli
