#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qtanner/io.hpp"
#include "qtanner/qtanner.hpp"

namespace fs = std::filesystem;
using namespace qtanner;

namespace {

struct Options {
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string output_dir;

    std::string action;
    std::vector<std::string> files;

    // graph build
    std::string group = "cyclic";
    std::size_t order = 0;
    std::string labels;
    std::string side = "left";
    bool cover = false;
    bool two_copies = false;
    std::size_t self_loops = 0;
    std::string name = "graph.json";

    // codes
    std::string local, local_a, local_b;
    std::size_t cap = default_distance_cap;
    bool force = false;
    std::size_t bounds = 0;

    // characterize
    std::string psi_file;
    bool from_pair = false;
    bool sweep = false;
    bool no_swap_gate = false;

    // example
    std::string check, characterize, code;
    bool remedy = false;
};

struct Run {
    Json inputs = Json::array();
    Json outputs = Json::object();
    std::optional<bool> verdict;
    std::map<std::string, std::string> artifacts;
};

std::string fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::parse, "cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void add_input(Run& run, const std::string& name, const std::string& bytes)
{
    run.inputs.push_back(Json{{"name", name}, {"fnv1a64", fnv1a64(bytes)}});
}

Json parse_json(const std::string& text, const std::string& origin)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::parse, origin + ": malformed JSON: " + e.what());
    }
}

// Edge-list form: {"n", "degree", "edges": [[u, v, label at u, label at v] | [v, v, label] (folded)], "partition"?}
Json graph_to_json(const LabeledGraph& g)
{
    Json j;
    j["n"] = g.n_vertices();
    j["degree"] = g.degree();
    j["edges"] = Json::array();
    for (const Edge& e : g.edges()) {
        if (e.folded) j["edges"].push_back(Json::array({e.end[0], e.end[1], e.label[0]}));
        else j["edges"].push_back(Json::array({e.end[0], e.end[1], e.label[0], e.label[1]}));
    }
    if (g.partition()) j["partition"] = *g.partition();
    return j;
}

LabeledGraph graph_from_edge_json(const Json& j)
{
    for (const auto& [key, unused] : j.items()) {
        (void)unused;
        if (key != "n" && key != "degree" && key != "edges" && key != "partition") detail::field_error(key, "unknown field");
    }
    const long long n = detail::integer_field(detail::member(j, "n"), "n");
    const long long d = detail::integer_field(detail::member(j, "degree"), "degree");
    if (n < 0 || d < 0) detail::field_error(n < 0 ? "n" : "degree", "must be nonnegative");
    const Json& edges = detail::member(j, "edges");
    if (!edges.is_array()) detail::field_error("edges", "expected an array");
    std::vector<Edge> out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string f = "edges[" + std::to_string(i) + "]";
        const Json& e = edges[i];
        if (!e.is_array() || (e.size() != 3 && e.size() != 4)) detail::field_error(f, "expected [u, v, lu, lv] or [v, v, l]");
        std::array<long long, 4> x{};
        for (std::size_t k = 0; k < e.size(); ++k) x[k] = detail::integer_field(e[k], f + "[" + std::to_string(k) + "]");
        for (std::size_t k = 0; k < 2; ++k)
            if (x[k] < 0 || x[k] >= n) detail::field_error(f, "vertex out of range");
        for (std::size_t k = 2; k < e.size(); ++k)
            if (x[k] < 0 || x[k] >= d) detail::field_error(f, "label out of range");
        Edge edge;
        edge.end = {static_cast<Vertex>(x[0]), static_cast<Vertex>(x[1])};
        if (e.size() == 3) {
            if (x[0] != x[1]) detail::field_error(f, "a folded edge must be a loop");
            edge.label = {static_cast<Label>(x[2]), static_cast<Label>(x[2])};
            edge.folded = true;
        } else {
            edge.label = {static_cast<Label>(x[2]), static_cast<Label>(x[3])};
        }
        out.push_back(edge);
    }
    std::optional<Partition> part;
    if (j.contains("partition")) {
        const Json& p = j.at("partition");
        if (!p.is_array() || static_cast<long long>(p.size()) != n) detail::field_error("partition", "expected an array of n sides");
        part.emplace();
        for (std::size_t v = 0; v < p.size(); ++v) {
            const long long s = detail::integer_field(p[v], "partition[" + std::to_string(v) + "]");
            if (s != 0 && s != 1) detail::field_error("partition[" + std::to_string(v) + "]", "side must be 0 or 1");
            part->push_back(static_cast<std::uint8_t>(s));
        }
    }
    try {
        return LabeledGraph(static_cast<std::size_t>(n), static_cast<std::size_t>(d), std::move(out), std::move(part));
    } catch (const Error& e) {
        throw Error(ErrorKind::invalid_spec, e.what());
    }
}

LabeledGraph load_graph(Run& run, const std::string& path)
{
    const std::string text = read_file(path);
    add_input(run, path, text);
    const Json j = parse_json(text, path);
    try {
        if (j.is_object() && j.contains("edges")) return graph_from_edge_json(j);
        return schreier_graph(schreier_spec_from_json(j));
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.what());
    }
}

void need_files(const Options& o, std::size_t lo, std::size_t hi)
{
    if (o.files.size() < lo || o.files.size() > hi)
        throw Error(ErrorKind::parse, "'" + o.action + "' takes " +
                                          (lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi)) +
                                          " input files, got " + std::to_string(o.files.size()));
}

bool is_bit_rows(const std::string& s)
{
    return !s.empty() && s.find_first_not_of("01,") == std::string::npos;
}

LinearCode parse_local(const std::string& spec, std::size_t delta)
{
    if (is_bit_rows(spec)) {
        std::vector<std::string> rows;
        std::stringstream ss(spec);
        for (std::string r; std::getline(ss, r, ',');)
            if (!r.empty()) rows.push_back(r);
        const BitMatrix h = BitMatrix::from_strings(rows, delta);
        if (h.cols() != delta) throw Error(ErrorKind::label_mismatch, "local parity rows must have length " + std::to_string(delta));
        return LinearCode(h);
    }
    const LinearCode c = local_code_by_name(spec);
    if (c.n() != delta)
        throw Error(ErrorKind::label_mismatch, "local code '" + spec + "' has length " + std::to_string(c.n()) + ", need " + std::to_string(delta));
    return c;
}

std::pair<LinearCode, LinearCode> local_codes(const Options& o, std::size_t delta)
{
    const std::string fallback = o.local.empty() ? "rep" + std::to_string(delta) : o.local;
    return {parse_local(o.local_a.empty() ? fallback : o.local_a, delta), parse_local(o.local_b.empty() ? fallback : o.local_b, delta)};
}

Json code_json(const LinearCode& c)
{
    return Json{{"n", c.n()}, {"k", c.k()}, {"parity", c.parity().to_strings()}};
}

Json weights_json(const WeightSummary& w)
{
    return Json{{"max_row", w.max_row}, {"max_col", w.max_col}, {"mean_row", w.mean_row}, {"mean_col", w.mean_col}};
}

Json optional_json(const std::optional<std::size_t>& x) { return x ? Json(*x) : Json(nullptr); }

// ---- graph

GroupTable::Element parse_element(const std::string& tok, const std::string& group, std::size_t m)
{
    try {
        if (group == "cyclic") {
            const long long x = std::stoll(tok);
            const auto mm = static_cast<long long>(m);
            return static_cast<GroupTable::Element>(((x % mm) + mm) % mm);
        }
        if (tok.size() >= 2 && (tok[0] == 'r' || tok[0] == 's')) {
            const long long i = std::stoll(tok.substr(1));
            const auto mm = static_cast<long long>(m);
            const auto k = static_cast<std::size_t>(((i % mm) + mm) % mm);
            return tok[0] == 'r' ? GroupTable::dihedral_rotation(m, k) : GroupTable::dihedral_reflection(m, k);
        }
    } catch (const std::logic_error&) {
    }
    throw Error(ErrorKind::parse, "bad group element '" + tok + "' (cyclic: integers; dihedral: r<i> or s<i>)");
}

void cmd_graph(const Options& o, Run& run)
{
    if (o.action == "build") {
        need_files(o, 0, 0);
        if (o.order == 0) throw Error(ErrorKind::parse, "--order must be positive");
        if (o.group != "cyclic" && o.group != "dihedral") throw Error(ErrorKind::parse, "--group must be cyclic or dihedral");
        const GroupTable g = o.group == "cyclic" ? GroupTable::cyclic(o.order) : GroupTable::dihedral(o.order);
        std::vector<GroupTable::Element> labels;
        std::stringstream ss(o.labels);
        for (std::string t; std::getline(ss, t, ',');)
            if (!t.empty()) labels.push_back(parse_element(t, o.group, o.order));
        if (labels.empty()) throw Error(ErrorKind::parse, "--labels must list at least one group element");
        SchreierSpec spec = cayley_graph(g, labels, o.side == "right" ? CayleySide::right : CayleySide::left);
        if (o.self_loops) spec = with_self_loops(spec, o.self_loops);
        if (o.two_copies) spec = two_copies_spec(spec);
        if (o.cover) spec = double_cover_spec(spec);
        const Json j = to_json(spec);
        run.artifacts[o.name] = j.dump(2) + "\n";
        run.outputs["graph"] = Json{{"n", spec.n_vertices}, {"delta", spec.degree()}, {"file", o.name}};
        return;
    }
    need_files(o, 1, 1);
    const LabeledGraph g = load_graph(run, o.files[0]);
    std::size_t loops = 0, folded = 0;
    for (const Edge& e : g.edges()) {
        loops += e.is_loop() ? 1 : 0;
        folded += e.folded ? 1 : 0;
    }
    Json out{{"n", g.n_vertices()}, {"degree", g.degree()}, {"edges", g.n_edges()}, {"loops", loops}, {"folded_loops", folded},
             {"components", g.component_count()}, {"bipartite", g.is_bipartite()}};
    if (g.n_vertices() > 2) {
        out["lambda"] = lambda(g);
        out["ramanujan"] = is_ramanujan(g);
    }
    run.outputs["graph"] = out;
}

// ---- check

void run_check(const std::string& kind, const LabeledGraph& a, const LabeledGraph* b, Run& run)
{
    const auto need_b = [&] {
        if (!b) throw Error(ErrorKind::parse, "check " + kind + " needs two graphs");
    };
    Json out;
    if (kind == "commute") {
        need_b();
        run.verdict = commute_check(a, *b);
        out["commute"] = *run.verdict;
    } else if (kind == "overlap") {
        need_b();
        const auto common = overlap_check(a, *b);
        out["overlapping_pairs"] = common.size();
        Json list = Json::array();
        for (const auto& [v, w] : common) list.push_back(Json::array({v, w}));
        out["pairs"] = list;
        run.verdict = common.empty();
    } else if (kind == "bipartite") {
        std::optional<Partition> p = a.partition() ? a.partition() : a.find_bipartition();
        bool ok = p && a.is_bipartite_on(*p);
        if (b) ok = ok && b->n_vertices() == a.n_vertices() && b->is_bipartite_on(*p);
        out["bipartite"] = ok;
        out["shared_partition"] = b != nullptr;
        run.verdict = ok;
    } else if (kind == "pairs") {
        need_b();
        run.verdict = inverse_pair_compat(a, *b);
        out["inverse_pairs_compatible"] = *run.verdict;
    } else if (kind == "ramanujan") {
        const double l = lambda(a);
        out["lambda"] = l;
        out["bound"] = ramanujan_bound(a.degree());
        run.verdict = is_ramanujan(a);
        out["ramanujan"] = *run.verdict;
    } else if (kind == "spectrum") {
        if (!b) {
            out["eigenvalues"] = eigenvalues_symmetric(a.adjacency()).eigenvalues;
            run.verdict = true;
        } else {
            const auto r = product_spectrum_check(a, *b);
            out["product_residual"] = r.product_residual;
            out["sum_residual"] = r.sum_residual;
            out["eigenvector_residual"] = r.eigenvector_residual;
            out["pairing_ok"] = r.pairing_ok();
            out["bound_applicable"] = r.bound_applicable;
            out["bound"] = r.bound;
            out["lambda_square"] = r.lambda_square ? Json(*r.lambda_square) : Json(nullptr);
            out["bound_holds"] = r.bound_holds ? Json(*r.bound_holds) : Json(nullptr);
            out["hypotheses_failed"] = r.hypotheses_failed;
            run.verdict = r.pairing_ok() && r.bound_holds.value_or(true);
        }
    } else {
        throw Error(ErrorKind::parse, "unknown check '" + kind + "'");
    }
    run.outputs["check"] = kind;
    run.outputs["result"] = out;
}

void cmd_check(const Options& o, Run& run)
{
    need_files(o, 1, 2);
    const LabeledGraph a = load_graph(run, o.files[0]);
    std::optional<LabeledGraph> b;
    if (o.files.size() == 2) b = load_graph(run, o.files[1]);
    run_check(o.action, a, b ? &*b : nullptr, run);
}

// ---- complex

Json complex_json(const SquareComplex& x)
{
    Json j;
    j["delta"] = x.delta;
    j["vertices"] = Json{{"v0", x.v0}, {"v1", x.v1}};
    const auto edges = [](const LabeledGraph& g, const char* tag) {
        Json list = Json::array();
        for (std::size_t i = 0; i < g.n_edges(); ++i) {
            const Edge& e = g.edge(i);
            list.push_back(Json{{"tag", tag}, {"id", i}, {"ends", e.end}, {"labels", e.label}});
        }
        return list;
    };
    j["edges"] = Json{{"a", edges(x.a, "A")}, {"b", edges(x.b, "B")}};
    j["squares"] = Json::array();
    for (const Square& q : x.squares) j["squares"].push_back(Json::array({q.e1, q.e2, q.e3, q.e4}));
    return j;
}

SquareComplex complex_from_files(const Options& o, Run& run)
{
    need_files(o, 2, 2);
    const LabeledGraph a = load_graph(run, o.files[0]);
    const LabeledGraph b = load_graph(run, o.files[1]);
    return build_complex(a, b);
}

void emit_complex(const SquareComplex& x, Run& run)
{
    const auto [g0, g1] = square_graphs(x);
    run.artifacts["complex.json"] = complex_json(x).dump(2) + "\n";
    run.artifacts["g0.json"] = graph_to_json(g0.graph).dump(2) + "\n";
    run.artifacts["g1.json"] = graph_to_json(g1.graph).dump(2) + "\n";
    run.outputs["complex"] = Json{{"delta", x.delta}, {"v0", x.v0.size()}, {"v1", x.v1.size()}, {"squares", x.squares.size()}};
}

// ---- code

void code_outputs(const std::string& action, const Options& o, const CssCode& c, Run& run)
{
    Json out{{"n", c.n}, {"h0_rows", c.h0.rows()}, {"h1_rows", c.h1.rows()}, {"rank_h0", c.rank_h0}, {"rank_h1", c.rank_h1},
             {"dim_c0", c.dim_c0()}, {"dim_c1", c.dim_c1()}, {"orthogonal", c.orthogonal}};
    out["k"] = c.orthogonal ? Json(css_dimension(c)) : Json(nullptr);
    const LdpcReport l = ldpc_report(c);
    out["ldpc"] = Json{{"h0", weights_json(l.h0)}, {"h1", weights_json(l.h1)}};
    run.verdict = c.orthogonal;
    if (action == "distance" && c.orthogonal) {
        const DistanceResult d = o.bounds ? css_distance_bounds(c, o.bounds, o.seed) : css_distances(c, o.cap, o.threads, o.force);
        out["distance"] = Json{{"dx", optional_json(d.dx)}, {"dz", optional_json(d.dz)}, {"exact", d.exact}, {"note", d.note}};
        if (o.bounds) out["distance"]["iterations"] = o.bounds;
    }
    if (action == "build" || action == "export-alist") {
        run.artifacts["h0.alist"] = to_alist(c.h0);
        run.artifacts["h1.alist"] = to_alist(c.h1);
    }
    run.outputs["code"] = out;
}

void code_from_complex(const std::string& action, const Options& o, const SquareComplex& x, Run& run)
{
    const auto [ca, cb] = local_codes(o, x.delta);
    run.outputs["local"] = Json{{"a", code_json(ca)}, {"b", code_json(cb)}};
    run.outputs["complex"] = Json{{"delta", x.delta}, {"v0", x.v0.size()}, {"squares", x.squares.size()}};
    code_outputs(action, o, css_from_complex(x, ca, cb), run);
}

void cmd_code(const Options& o, Run& run)
{
    const bool alist_inputs = o.files.size() == 2 && o.files[0].ends_with(".alist") && o.files[1].ends_with(".alist");
    if (alist_inputs) {
        std::array<BitMatrix, 2> h;
        for (std::size_t i = 0; i < 2; ++i) {
            const std::string text = read_file(o.files[i]);
            add_input(run, o.files[i], text);
            try {
                h[i] = from_alist(text);
            } catch (const Error& e) {
                throw Error(e.kind(), o.files[i] + ": " + e.what());
            }
        }
        code_outputs(o.action, o, make_css(h[0], h[1]), run);
        return;
    }
    code_from_complex(o.action, o, complex_from_files(o, run), run);
}

// ---- characterize

PsiMap load_psi(const Options& o, Run& run, std::size_t edges)
{
    if (o.psi_file.empty()) return PsiMap::identity(edges);
    const std::string text = read_file(o.psi_file);
    add_input(run, o.psi_file, text);
    const Json j = parse_json(text, o.psi_file);
    if (!j.is_array()) throw Error(ErrorKind::parse, o.psi_file + ": psi must be an array of G1 edge ids");
    std::vector<std::uint32_t> image;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const long long x = detail::integer_field(j[i], "psi[" + std::to_string(i) + "]");
        if (x < 0) throw Error(ErrorKind::parse, "psi[" + std::to_string(i) + "] is negative");
        image.push_back(static_cast<std::uint32_t>(x));
    }
    return PsiMap(std::move(image));
}

void run_characterize(const std::string& kind, const Options& o, const LabeledGraph& g0, const LabeledGraph& g1, const PsiMap& psi,
                      Run& run)
{
    Json out;
    if (kind == "ii") {
        const auto r = condition_ii_check(g0, g1, psi);
        out["holds"] = r.holds;
        out["overlaps"] = r.overlaps;
        out["read_as_rows"] = r.read_as_rows;
        out["read_as_columns"] = r.read_as_columns;
        out["ambiguous"] = r.ambiguous;
        if (r.witness) {
            Json cells = Json::array();
            for (const OverlapCell& c : r.witness->cells) cells.push_back(Json::array({c.a, c.b}));
            out["witness"] = Json{{"v", r.witness->v}, {"w", r.witness->w}, {"cells", cells}};
        }
        run.verdict = r.holds;
    } else if (kind == "swap") {
        const auto r = swapping_condition_check(g0, g1, psi);
        out["holds"] = r.holds;
        out["failing_edge"] = r.failing_edge ? Json(*r.failing_edge) : Json(nullptr);
        out["fixed_edges"] = r.fixed_edges;
        out["swap_form_everywhere"] = r.swap_form_everywhere;
        run.verdict = r.holds;
    } else if (kind == "reconstruct") {
        try {
            const Reconstruction r = reconstruct_schreier_pair(g0, g1, psi, !o.no_swap_gate);
            const bool same = round_trip_matches(g0, g1, psi, r);
            out["reconstructed"] = true;
            out["round_trip"] = same;
            out["vertices"] = r.a.n_vertices();
            out["delta"] = r.a.degree();
            out["squares"] = r.complex.squares.size();
            run.artifacts["a.json"] = graph_to_json(r.a).dump(2) + "\n";
            run.artifacts["b.json"] = graph_to_json(r.b).dump(2) + "\n";
            run.verdict = same;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::condition_ii_failed && e.kind() != ErrorKind::swapping_condition_failed) throw;
            out["reconstructed"] = false;
            out["reason"] = Json{{"kind", to_string(e.kind())}, {"message", e.what()}};
            run.verdict = false;
        }
    } else if (kind == "general-css") {
        const std::size_t d = label_side(g0);
        if (o.sweep) {
            const LocalCodeSweep s = local_code_sweep(g0, g1, psi);
            out["sweep"] = Json{{"pairs", s.pairs}, {"violations", s.violations}};
            run.verdict = s.violations == 0;
        } else {
            const auto [ca, cb] = local_codes(o, d);
            const CssCode c = general_qtanner_css(g0, g1, psi, ca, cb);
            out["local"] = Json{{"a", code_json(ca)}, {"b", code_json(cb)}};
            out["n"] = c.n;
            out["orthogonal"] = c.orthogonal;
            out["k"] = c.orthogonal ? Json(css_dimension(c)) : Json(nullptr);
            run.verdict = c.orthogonal;
        }
    } else {
        throw Error(ErrorKind::parse, "unknown characterization '" + kind + "'");
    }
    run.outputs["characterize"] = kind;
    run.outputs["result"] = out;
}

void cmd_characterize(const Options& o, Run& run)
{
    need_files(o, 2, 2);
    LabeledGraph g0 = load_graph(run, o.files[0]);
    LabeledGraph g1 = load_graph(run, o.files[1]);
    if (o.from_pair) {
        auto [s0, s1] = square_graphs(build_complex(g0, g1));
        g0 = std::move(s0.graph);
        g1 = std::move(s1.graph);
    }
    run_characterize(o.action, o, g0, g1, load_psi(o, run, g0.n_edges()), run);
}

// ---- example

void builtin_input(Run& run, const std::string& name, const Json& data) { add_input(run, "builtin:" + name, data.dump()); }

void example_pair(const Options& o, const ExamplePair& p, Run& run)
{
    if (!o.check.empty()) {
        run_check(o.check, p.ga, &p.gb, run);
        return;
    }
    if (!o.code.empty()) {
        if (o.code != "build" && o.code != "distance" && o.code != "export-alist" && o.code != "report")
            throw Error(ErrorKind::parse, "unknown --code action '" + o.code + "'");
        code_from_complex(o.code, o, build_complex(p.ga, p.gb), run);
        return;
    }
    const SquareComplex x = build_complex(p.ga, p.gb);
    if (!o.characterize.empty()) {
        const auto [g0, g1] = square_graphs(x);
        run_characterize(o.characterize, o, g0.graph, g1.graph, PsiMap::identity(g0.n_edges()), run);
        return;
    }
    emit_complex(x, run);
}

void cmd_example(const Options& o, Run& run)
{
    const int modes = !o.check.empty() + !o.characterize.empty() + !o.code.empty();
    if (modes > 1) throw Error(ErrorKind::parse, "use at most one of --check, --characterize and --code");
    run.outputs["example"] = o.action;
    if (o.action == "petersen") {
        need_files(o, 0, 0);
        const ExamplePair p = o.remedy ? petersen_remedy() : make_pair_from_specs(petersen_spec(), petersen_partner_spec());
        builtin_input(run, o.remedy ? "petersen-remedy" : "petersen", Json::array({to_json(p.a), to_json(p.b)}));
        if (!o.remedy && o.check.empty() && o.code.empty() && o.characterize.empty()) {
            run.outputs["ma_matches_adjacency"] = petersen_block_ma() == p.ga.adjacency();
            run.outputs["mb_matches_adjacency"] = petersen_block_mb() == p.gb.adjacency();
            run_check("commute", p.ga, &p.gb, run);
            return;
        }
        example_pair(o, p, run);
        return;
    }
    if (o.action == "red-nonempty") {
        need_files(o, 0, 0);
        if (!o.check.empty() || !o.code.empty()) throw Error(ErrorKind::parse, "red-nonempty supports --characterize only");
        const RedExample ex = example_red_nonempty();
        builtin_input(run, "red-nonempty", graph_to_json(ex.graph));
        run_characterize(o.characterize.empty() ? "ii" : o.characterize, o, ex.graph, ex.graph, ex.psi, run);
        return;
    }
    need_files(o, 1, 1);
    std::size_t m = 0;
    try {
        std::size_t used = 0;
        m = std::stoul(o.files[0], &used);
        if (used != o.files[0].size()) m = 0;
    } catch (const std::logic_error&) {
    }
    if (m < 3) throw Error(ErrorKind::parse, "cyclic example needs an integer m >= 3, got '" + o.files[0] + "'");
    const ExamplePair p = cyclic_pipeline(m);
    builtin_input(run, "cyclic-" + std::to_string(m), Json::array({to_json(p.a), to_json(p.b)}));
    run.outputs["m"] = m;
    example_pair(o, p, run);
}

// ---- artifacts

void write_artifacts(const fs::path& dir, const std::map<std::string, std::string>& files)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::parse, "cannot create output directory '" + dir.string() + "': " + ec.message());
    std::vector<fs::path> temps;
    const auto cleanup = [&] {
        for (const auto& t : temps) fs::remove(t, ec);
    };
    for (const auto& [name, bytes] : files) {
        const fs::path tmp = dir / ("." + name + ".tmp");
        std::ofstream out(tmp, std::ios::binary);
        temps.push_back(tmp);
        if (!(out << bytes) || !(out.flush())) {
            cleanup();
            throw Error(ErrorKind::parse, "cannot write '" + tmp.string() + "'");
        }
    }
    std::size_t i = 0;
    for (const auto& [name, unused] : files) {
        (void)unused;
        fs::rename(temps[i++], dir / name, ec);
        if (ec) {
            cleanup();
            throw Error(ErrorKind::parse, "cannot move '" + name + "' into place: " + ec.message());
        }
    }
}

int fail(const std::string& kind, const std::string& message)
{
    std::string line = message;
    for (char& c : line)
        if (c == '\n' || c == '\r') c = ' ';
    std::cerr << "qtanner: error: " << kind << ": " << line << "\n";
    return 2;
}

} // namespace

int main(int argc, char** argv)
{
    const auto start = std::chrono::steady_clock::now();
    Options o;
    CLI::App app{"Generalized quantum Tanner codes from commuting Schreier graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", o.seed, "Seed for randomized features");
    app.add_option("--threads", o.threads, "Worker threads for distance search")->check(CLI::Range(1U, 256U));
    app.add_option("--output-dir", o.output_dir, "Directory for artifacts and report.json");

    const auto files = [&](CLI::App* sub, const char* desc) { sub->add_option("files", o.files, desc); };
    const auto locals = [&](CLI::App* sub) {
        sub->add_option("--local", o.local, "Local code for both sides: repN, spcN, fullN or parity rows like 110,011");
        sub->add_option("--local-a", o.local_a, "Local code C_A");
        sub->add_option("--local-b", o.local_b, "Local code C_B");
    };
    const auto distance_opts = [&](CLI::App* sub) {
        sub->add_option("--cap", o.cap, "Largest k searched exhaustively");
        sub->add_flag("--force", o.force, "Search past the cap");
        sub->add_option("--bounds", o.bounds, "Random information-set iterations instead of exact search");
    };

    CLI::App* graph = app.add_subcommand("graph", "Build or inspect a graph");
    graph->add_option("action", o.action)->required()->check(CLI::IsMember({"build", "inspect"}));
    files(graph, "Graph file (inspect)");
    graph->add_option("--group", o.group, "cyclic or dihedral");
    graph->add_option("--order", o.order, "m for Z_m or the dihedral group of order 2m");
    graph->add_option("--labels", o.labels, "Comma-separated group elements");
    graph->add_option("--side", o.side, "left or right Cayley action")->check(CLI::IsMember({"left", "right"}));
    graph->add_flag("--cover", o.cover, "Take the bipartite double cover");
    graph->add_flag("--two-copies", o.two_copies, "Take two disjoint copies before covering");
    graph->add_option("--self-loops", o.self_loops, "Add this many identity labels");
    graph->add_option("--name", o.name, "Artifact file name");

    CLI::App* check = app.add_subcommand("check", "Check graph properties");
    check->add_option("action", o.action)->required()->check(CLI::IsMember({"commute", "overlap", "bipartite", "pairs", "ramanujan", "spectrum"}));
    files(check, "One or two graph files");

    CLI::App* cx = app.add_subcommand("complex", "Build the square complex of a graph pair");
    cx->add_option("action", o.action)->required()->check(CLI::IsMember({"build"}));
    files(cx, "G_A and G_B graph files");

    CLI::App* code = app.add_subcommand("code", "Build quantum Tanner codes");
    code->add_option("action", o.action)->required()->check(CLI::IsMember({"build", "distance", "export-alist", "report"}));
    files(code, "G_A and G_B graph files, or h0 and h1 alist files");
    locals(code);
    distance_opts(code);

    CLI::App* ch = app.add_subcommand("characterize", "Conditions on a pair of square graphs");
    ch->add_option("action", o.action)->required()->check(CLI::IsMember({"ii", "swap", "reconstruct", "general-css"}));
    files(ch, "G0 and G1 graph files");
    ch->add_option("--psi", o.psi_file, "JSON array mapping G0 edge ids to G1 edge ids");
    ch->add_flag("--from-pair", o.from_pair, "Inputs are G_A and G_B; use their square graphs");
    ch->add_flag("--sweep", o.sweep, "general-css: try every single-row local parity pair");
    ch->add_flag("--no-swap-gate", o.no_swap_gate, "reconstruct: skip the swapping condition");
    locals(ch);

    CLI::App* ex = app.add_subcommand("example", "Built-in examples");
    ex->add_option("action", o.action)->required()->check(CLI::IsMember({"petersen", "red-nonempty", "cyclic"}));
    files(ex, "m for the cyclic example");
    ex->add_option("--check", o.check, "Run a check on the example pair");
    ex->add_option("--characterize", o.characterize, "Run a characterization on the square graphs");
    ex->add_option("--code", o.code, "build, distance, export-alist or report");
    ex->add_flag("--remedy", o.remedy, "petersen: use the covered remedy pair");
    ex->add_flag("--sweep", o.sweep, "general-css: try every single-row local parity pair");
    ex->add_flag("--no-swap-gate", o.no_swap_gate, "reconstruct: skip the swapping condition");
    locals(ex);
    distance_opts(ex);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what());
    }

    Run run;
    try {
        if (graph->parsed()) cmd_graph(o, run);
        else if (check->parsed()) cmd_check(o, run);
        else if (cx->parsed()) {
            emit_complex(complex_from_files(o, run), run);
        } else if (code->parsed()) cmd_code(o, run);
        else if (ch->parsed()) cmd_characterize(o, run);
        else cmd_example(o, run);
    } catch (const Error& e) {
        return fail(std::string(to_string(e.kind())), e.what());
    } catch (const std::exception& e) {
        return fail("internal", e.what());
    }

    Json report;
    report["tool"] = "qtanner";
    report["version"] = version;
    report["command"] = Json::array();
    for (int i = 1; i < argc; ++i) report["command"].push_back(argv[i]);
    report["inputs"] = run.inputs;
    report["outputs"] = run.outputs;
    report["verdict"] = run.verdict ? Json(*run.verdict) : Json(nullptr);
    report["artifacts"] = Json::array();
    for (const auto& [name, unused] : run.artifacts) {
        (void)unused;
        report["artifacts"].push_back(name);
    }
    report["timing"] = Json{{"elapsed_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()}};
    const std::string text = report.dump(2) + "\n";

    if (!run.artifacts.empty()) {
        auto files_out = run.artifacts;
        files_out["report.json"] = text;
        try {
            write_artifacts(o.output_dir.empty() ? fs::path(".") : fs::path(o.output_dir), files_out);
        } catch (const Error& e) {
            return fail(std::string(to_string(e.kind())), e.what());
        }
    }
    std::cout << text;
    return run.verdict.value_or(true) ? 0 : 1;
}
