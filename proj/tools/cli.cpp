#include "cli.hpp"

#include "hyperchrom/bundles.hpp"
#include "hyperchrom/coloring.hpp"
#include "hyperchrom/constructions.hpp"
#include "hyperchrom/cuts.hpp"
#include "hyperchrom/errors.hpp"
#include "hyperchrom/generators.hpp"
#include "hyperchrom/io.hpp"
#include "hyperchrom/kneserlab.hpp"
#include "hyperchrom/patterns.hpp"
#include "hyperchrom/structure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace hyperchrom::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t default_seed = 20240611;

// A usage problem found after parsing (unknown family, bad pattern spec).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A check that ran and failed: exit 1 with the record emitted.
struct ValidationFailure : std::runtime_error {
    ValidationFailure(const std::string& what, nlohmann::ordered_json record = {})
        : std::runtime_error(what)
        , doc(std::move(record))
    {
    }
    nlohmann::ordered_json doc;
};

std::string rat(const Rational& q) { return to_string(q); }
std::string big(const BigInt& z) { return to_string(z); }

json exact(const Rational& q)
{
    return json{{"exact", rat(q)}, {"decimal", to_decimal(q, 12)}};
}

json sets(const std::vector<VertexSet>& s)
{
    json out = json::array();
    for (const auto& v : s)
        out.push_back(v);
    return out;
}

void emit(std::ostream& out, const json& doc, bool as_json)
{
    if (as_json) {
        out << doc.dump(2) << '\n';
        return;
    }
    for (const auto& [key, value] : doc.items()) {
        out << key << '=';
        if (value.is_string())
            out << value.get<std::string>();
        else
            out << value.dump();
        out << '\n';
    }
}

Rational parse_q(const std::string& text, const char* what)
{
    try {
        return parse_rational(text);
    } catch (const Error&) {
        throw UsageError(std::string("--") + what + " expects a rational, got '" + text + "'");
    }
}

BigInt parse_z(const std::string& text, const char* what)
{
    auto q = parse_q(text, what);
    if (q.get_den() != 1)
        throw UsageError(std::string("--") + what + " expects an integer");
    return q.get_num();
}

// Either a 3-graph file or an nfb bundle, told apart by the header.
FiberBundle load_bundle(const std::string& path)
{
    auto text = read_file(path);
    if (text.rfind("nfb", 0) == 0)
        return load_nfb(path);
    return neighborhood_bundle(load_nhg(path));
}

struct PatternSpec {
    std::string id;
    std::optional<std::size_t> tkf;
    Hypergraph graph;
};

PatternSpec parse_pattern(const std::string& spec)
{
    PatternSpec p;
    p.id = spec;
    if (spec.rfind("tkf:", 0) == 0) {
        try {
            p.tkf = std::stoul(spec.substr(4));
        } catch (const std::exception&) {
            throw UsageError("bad pattern '" + spec + "', expected tkf:<s>");
        }
        return p;
    }
    for (const auto& id : {"f5", "f4", "t5", "fano", "s7", "k4"})
        if (spec == id) {
            p.graph = named(spec);
            return p;
        }
    if (!std::filesystem::exists(spec))
        throw UsageError("unknown pattern '" + spec + "' (not a named pattern, tkf:<s> or a file)");
    p.id = "file";
    p.graph = load_nhg(spec);
    return p;
}

json check_pattern(const Hypergraph& g, const PatternSpec& p, std::uint64_t max_nodes)
{
    json out;
    out["pattern"] = p.id;
    if (p.tkf) {
        auto core = contains_tkf(g, *p.tkf, PatternBudget{max_nodes});
        out["free"] = !core;
        if (core)
            out["witness"] = *core;
        return out;
    }
    std::optional<Embedding> e = p.id == "file" ? find_embedding(g, p.graph, PatternBudget{max_nodes})
                                                : contains_named(g, p.id, PatternBudget{max_nodes});
    out["free"] = !e;
    if (e)
        out["witness"] = e->map;
    return out;
}

// ---------------------------------------------------------------- options

struct Options {
    bool json = false;
    std::uint64_t seed = default_seed;

    std::string file, output, labels, family, pattern = "f5", bundle_pattern = "edge", sub;
    std::size_t n = 0, r = 3, s = 0, m = 5, k = 0, t = 1, limit = 6, dim = 1, colors = 0, d = 1, q = 1;
    std::uint64_t max_nodes = 2'000'000'000ULL;
    std::string u, v, w, x, eps, size, id, weight, alpha, eta, beta, lambda, mode = "practical", coloring;
    std::size_t n1 = 0, n2 = 0, structure_r = 0;
    bool profile = false, closure = false;
};

// ---------------------------------------------------------------- constructions

struct Built {
    Construction c;
    std::string pattern; // freeness pattern of the construction
};

Built build_construction(const std::string& id, const Options& o)
{
    auto z = [&](const std::string& text, const char* what, long fallback) {
        return text.empty() ? BigInt(fallback) : parse_z(text, what);
    };
    auto qv = [&](const std::string& text, const char* what, const Rational& fallback) {
        return text.empty() ? fallback : parse_q(text, what);
    };
    std::size_t k = o.k ? o.k : 2;
    if (id == "f5_lower") {
        k = o.k ? o.k : 3;
        return {construct_f5_lower({k, o.t, z(o.u, "u", 9), z(o.v, "v", 9), z(o.w, "w", 3)}), "f5"};
    }
    if (id == "tkf4_lower") {
        k = o.k ? o.k : 3;
        return {construct_tkf4_lower({k, o.t, z(o.u, "u", 9), z(o.v, "v", 9), z(o.w, "w", 1)}), "tkf:4"};
    }
    if (id == "tkfs_lower") {
        k = o.k ? o.k : 3;
        std::size_t s = o.s ? o.s : 5;
        return {construct_tkfs_lower({s, k, o.t, z(o.u, "u", 9), z(o.x, "x", 2)}), "tkf:" + std::to_string(s)};
    }
    if (id == "fano_lower")
        return {construct_fano_lower({k, qv(o.eps, "eps", frac(1, 2)), z(o.u, "u", 14), z(o.v, "v", 12)}), "fano"};
    if (id == "t5_lower") {
        k = o.k ? o.k : 4;
        return {construct_t5_lower({k, qv(o.eps, "eps", 0), z(o.size, "N", 21)}), "t5"};
    }
    if (id == "fano_codegree_lower") {
        k = o.k ? o.k : 4;
        return {construct_fano_codegree_lower({k, qv(o.eps, "eps", 0), z(o.size, "N", 10)}), "fano"};
    }
    throw UsageError("unknown construction '" + id + "'");
}

// ---------------------------------------------------------------- commands

json cmd_gen(const Options& o, std::ostream& out)
{
    Hypergraph g;
    LabelTable labels;
    const auto& f = o.family;
    if (f == "turan")
        g = turan(o.n, o.r, o.s ? o.s : o.r);
    else if (f == "cycle")
        g = cycle(o.r, o.m);
    else if (f == "kneser") {
        auto kg = kneser(o.n, o.k ? o.k : 2, o.r, o.s ? o.s : 1);
        g = kg.graph;
        labels = kg.labels;
    } else if (f == "book")
        g = book(o.r, o.m);
    else if (f == "tk") {
        auto t = tk(o.s, o.r);
        g = t.graph;
        labels = t.labels;
    } else if (f == "b3")
        g = b3(o.n1, o.n2);
    else if (f == "named")
        g = named(o.id);
    else if (auto ids = construction_ids(); std::find(ids.begin(), ids.end(), f) != ids.end()) {
        auto b = build_construction(f, o);
        g = b.c.graph;
        labels = b.c.labels;
    } else
        throw UsageError("unknown family '" + f + "'");

    json doc;
    doc["command"] = "gen";
    doc["family"] = f;
    doc["n"] = g.vertex_count();
    doc["m"] = g.edge_count();
    if (o.output.empty()) {
        out << write_nhg(g);
        return json();
    }
    write_file(o.output, write_nhg(g));
    doc["file"] = o.output;
    if (!o.labels.empty() && !labels.empty()) {
        write_file(o.labels, write_labels(labels));
        doc["labels"] = o.labels;
    }
    return doc;
}

json cmd_info(const Options& o)
{
    auto g = load_nhg(o.file);
    json doc;
    doc["command"] = "info";
    doc["n"] = g.vertex_count();
    doc["m"] = g.edge_count();
    auto u = g.uniformity();
    doc["uniformity"] = u ? json(*u) : json("mixed");
    if (u && *u >= 1 && g.vertex_count() >= 1) {
        auto p = min_degree(g);
        doc["min_degree"] = p.min_degree;
        doc["min_degree_ratio"] = exact(p.ratio);
        if (*u >= 2 && g.vertex_count() >= *u) {
            auto c = min_degree(g, *u - 1);
            doc["min_codegree"] = big(*c.min_k_degree);
            doc["min_codegree_ratio"] = exact(*c.k_ratio);
        }
    }
    return doc;
}

json cmd_check_free(const Options& o)
{
    auto g = load_nhg(o.file);
    auto p = parse_pattern(o.pattern);
    json doc;
    doc["command"] = "check-free";
    auto res = check_pattern(g, p, o.max_nodes);
    doc.update(res);
    return doc;
}

json cmd_chromatic(const Options& o)
{
    auto g = load_nhg(o.file);
    SearchBudget b;
    b.max_nodes = o.max_nodes;
    b.max_vertices = std::max<std::size_t>(b.max_vertices, g.vertex_count());
    auto res = chromatic_number(g, o.limit, b);
    if (!is_weak_coloring(g, res.witness))
        throw ValidationFailure("solver coloring failed validation");
    json doc;
    doc["command"] = "chromatic";
    doc["chi"] = res.chi;
    doc["refuted"] = res.refuted;
    doc["coloring"] = res.witness.assignment();
    return doc;
}

json cmd_partite(const Options& o)
{
    auto g = load_nhg(o.file);
    SearchBudget b;
    b.max_nodes = o.max_nodes;
    b.max_vertices = std::max<std::size_t>(b.max_vertices, g.vertex_count());
    auto parts = is_s_partite(g, o.s, b);
    json doc;
    doc["command"] = "partite";
    doc["s"] = o.s;
    doc["partite"] = parts.has_value();
    doc["result"] = (parts ? "" : "not ") + std::to_string(o.s) + "-partite";
    if (parts)
        doc["parts"] = sets(*parts);
    return doc;
}

json cmd_structure(const Options& o)
{
    auto g = load_nhg(o.file);
    std::size_t r = o.structure_r;
    if (r == 0)
        r = g.require_uniform(3);
    json doc;
    doc["command"] = "structure";
    doc["r"] = r;
    auto p = near_r_partition(g, r);
    doc["near_partite"] = p.has_value();
    if (p) {
        doc["parts"] = sets(p->parts);
        doc["special"] = sets(p->special);
        doc["mono"] = p->mono;
    }
    auto c = critical_syntactic(g);
    doc["mono_near_partition"] = to_string(c.mono);
    doc["degree_one_vertices"] = to_string(c.degree_one);
    doc["turan_density"] = to_string(c.turan_density);
    doc["stability"] = to_string(c.stability);
    if (c.reference)
        doc["reference"] = *c.reference;
    auto gate = theorem1_gate(g);
    doc["partite_extendible_gate"] = gate.applies;
    doc["partitions_tried"] = gate.partitions_tried;
    return doc;
}

RefineParams bundle_params(const Options& o, const FiberBundle& b)
{
    std::size_t r_b = b.base().require_uniform(2);
    Hypergraph h;
    if (o.bundle_pattern == "edge")
        h = Hypergraph(b.r_gamma(), {[&] {
            Edge e;
            for (Vertex i = 0; i < b.r_gamma(); ++i)
                e.push_back(i);
            return e;
        }()});
    else {
        auto p = parse_pattern(o.bundle_pattern);
        if (p.tkf)
            throw UsageError("bundle patterns must be hypergraphs");
        h = p.graph;
    }
    Rational eps = o.eps.empty() ? frac(1, static_cast<long>(4 * r_b * r_b)) : parse_q(o.eps, "eps");
    if (o.mode == "paper")
        return RefineParams::paper(eps, o.dim, r_b, h);
    if (o.mode != "practical")
        throw UsageError("--mode is paper or practical");
    Rational psi_d = power(Rational(eps / 4), o.dim - 1);
    Rational alpha = o.alpha.empty() ? Rational(eps * psi_d / 2) : parse_q(o.alpha, "alpha");
    alpha.canonicalize();
    Rational eta = o.eta.empty() ? Rational(eps * alpha / 4) : parse_q(o.eta, "eta");
    eta.canonicalize();
    Rational beta = o.beta.empty() ? frac(1, 100) : parse_q(o.beta, "beta");
    Rational lambda = o.lambda.empty() ? frac(1, 100) : parse_q(o.lambda, "lambda");
    return RefineParams::practical(eps, o.dim, r_b, h, alpha, eta, beta, lambda);
}

json witness_json(const DimWitness& w) { return sets(w.edges); }

json cmd_bundle(const Options& o)
{
    auto b = load_bundle(o.file);
    json doc;
    doc["command"] = "bundle " + o.sub;
    doc["base_n"] = b.base().vertex_count();
    doc["base_m"] = b.base().edge_count();
    doc["fiber_size"] = b.fiber_size();
    doc["r_gamma"] = b.r_gamma();
    auto params = bundle_params(o, b);
    doc["params"] = params.describe();
    if (o.sub == "dim") {
        auto res = dim_h(b, params.h, o.dim, o.max_nodes);
        doc["dim"] = res.dim;
        if (res.witness) {
            doc["witness"] = witness_json(*res.witness);
            bool ok = audit_witness(b, params.h, *res.witness);
            doc["audit"] = ok;
            if (!ok)
                throw ValidationFailure("dimension witness failed the section audit", doc);
        }
        return doc;
    }
    if (o.sub == "refine") {
        VertexSet all;
        for (Vertex v = 0; v < b.base().vertex_count(); ++v)
            all.push_back(v);
        auto s = b.full_set();
        auto res = refine_pair(b, all, s, params);
        doc["refined"] = res.refined;
        if (res.refined) {
            json parts = json::array();
            for (const auto& p : res.parts)
                parts.push_back(json{{"y", p.x}, {"t_size", p.s.count()}});
            doc["parts"] = parts;
            doc["z"] = res.z;
        }
        doc["greedy"] = sets(res.greedy);
        if (res.witness)
            doc["witness"] = witness_json(*res.witness);
        auto problem = check_refine_outcome(b, all, s, params, res);
        doc["validated"] = problem.empty();
        if (!problem.empty())
            throw ValidationFailure(problem, doc);
        return doc;
    }
    auto res = color_with_dimension(b, params);
    doc["refinements"] = res.refinements;
    doc["merges"] = res.merges;
    doc["levels"] = res.levels;
    if (res.coloring) {
        doc["colors"] = res.coloring->color_count();
        doc["coloring"] = res.coloring->assignment();
        bool ok = is_weak_coloring_ignoring_singletons(b.base(), *res.coloring);
        doc["validated"] = ok;
        if (!ok)
            throw ValidationFailure("coloring has a monochromatic edge", doc);
    }
    if (res.witness) {
        doc["witness"] = witness_json(*res.witness);
        bool ok = audit_witness(b, params.h, *res.witness);
        doc["validated"] = ok;
        if (!ok)
            throw ValidationFailure("dimension witness failed the section audit", doc);
    }
    return doc;
}

json cmd_cut(const Options& o)
{
    auto g = load_nhg(o.file);
    json doc;
    doc["command"] = "cut " + o.sub;
    if (o.sub == "find") {
        auto c = find_5cut(g);
        doc["case"] = c.which_case;
        doc["v"] = c.v;
        if (c.which_case == 2)
            doc["f4"] = c.f4;
        doc["x"] = c.cut.x;
        doc["s_size"] = c.cut.s.size();
        doc["c_measured"] = exact(c.c_measured);
        doc["bound"] = big(c.bound);
        doc["meets_bound"] = BigInt(static_cast<unsigned long>(c.cut.s.size())) >= c.bound;
        doc["c_threshold"] = c.c_threshold;
        doc["above_threshold"] = to_double(c.c_measured) > c.c_threshold;
        doc["is_cut"] = is_cut(neighborhood_bundle(g), c.cut);
        if (!o.output.empty()) {
            write_file(o.output, write_cut(c.cut));
            doc["file"] = o.output;
        }
        return doc;
    }
    Rational eps = o.eps.empty() ? Rational(1) : parse_q(o.eps, "eps");
    auto res = find_low_independence_set(g, o.d, o.q, eps, o.seed);
    doc["seed"] = o.seed;
    doc["u"] = res.u;
    doc["matching"] = sets(res.matching);
    doc["strong_independence"] = res.strong_independence;
    doc["attempts"] = res.attempts;
    return doc;
}

json claim1_json(const Claim1Report& rep)
{
    json doc;
    doc["n"] = rep.n;
    doc["k"] = rep.k;
    doc["r"] = rep.r;
    doc["colors"] = rep.colors;
    doc["w"] = rat(rep.w);
    json cls = json::array();
    for (std::size_t i = 0; i < rep.classes.size(); ++i)
        cls.push_back(json{{"size", rep.classes[i].size()}, {"weight", rat(rep.class_weights[i])},
            {"r_wise_intersecting", static_cast<bool>(rep.class_intersecting[i])}});
    doc["classes"] = cls;
    json levels = json::array();
    for (const auto& l : rep.levels)
        levels.push_back(json{{"l", l.l}, {"weight", rat(l.weight)}, {"bound", rat(l.bound)}, {"holds", l.holds}});
    doc["levels"] = levels;
    doc["complement_weight"] = rat(rep.complement_weight);
    doc["binomial_tail"] = rat(rep.binomial_tail);
    doc["complement_matches"] = rep.complement_matches;
    doc["all_hold"] = rep.all_hold;
    return doc;
}

json cmd_kneser(const Options& o)
{
    json doc;
    doc["command"] = "kneser " + o.sub;
    if (o.sub == "weight") {
        auto fam = load_nsf(o.file);
        if (o.closure)
            fam = upward_closure(fam);
        Rational w = o.weight.empty() ? frac(1, 2) : parse_q(o.weight, "w");
        doc["n"] = fam.ground();
        doc["members"] = fam.size();
        doc["w"] = rat(w);
        doc["weight"] = exact(weighted_size(fam, w));
        return doc;
    }
    if (o.sub == "intersecting") {
        auto fam = load_nsf(o.file);
        auto res = is_r_wise_intersecting(fam, o.r, o.max_nodes);
        doc["r"] = o.r;
        doc["intersecting"] = res.intersecting;
        if (!res.intersecting)
            doc["counterexample"] = SetFamily(fam.ground(), res.counterexample).as_sets();
        return doc;
    }
    // certify
    std::size_t s = o.s ? o.s : o.r - 1;
    auto kg = kneser(o.n, o.k, o.r, s);
    Coloring c;
    if (!o.coloring.empty()) {
        std::istringstream in(read_file(o.coloring));
        std::vector<std::uint32_t> a;
        for (std::uint32_t x; in >> x;)
            a.push_back(x);
        c = Coloring(a);
    } else if (o.colors) {
        auto found = find_coloring(kg.graph, o.colors);
        if (!found)
            throw ValidationFailure("no proper " + std::to_string(o.colors) + "-coloring exists", doc);
        c = *found;
    } else
        c = chromatic_number(kg.graph, o.limit).witness;
    auto rep = claim1_certificate(o.n, o.k, o.r, s, c);
    doc.update(claim1_json(rep));
    if (!rep.all_hold)
        throw ValidationFailure("certificate bound violated", doc);
    return doc;
}

// The reference constants, as the thresholds are quoted.
const std::map<std::string, std::string>& reference_text()
{
    static const std::map<std::string, std::string> t{{"f5_lower", "6/49"}, {"tkf4_lower", "18/361"},
        {"tkfs_lower", "(s-2)(s-3)(s-4)^2/(s^2-13)^2"}, {"fano_lower", "9/17"}, {"t5_lower", "16/49"},
        {"fano_codegree_lower", "2/5 (co-degree)"}};
    return t;
}

json cmd_report(const Options& o)
{
    const auto& id = o.family;
    auto ids = construction_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end())
        throw UsageError("unknown construction '" + id + "'");
    std::size_t s = o.s ? o.s : 5;
    json doc;
    doc["command"] = "report";
    doc["construction"] = id;
    doc["reference"] = reference_text().at(id);
    doc["reference_value"] = exact(reference_constant(id, s));
    if (o.profile) {
        auto lp = limit_profile(id, s);
        json point;
        for (std::size_t i = 0; i < lp.fraction_names.size(); ++i)
            point[lp.fraction_names[i]] = rat(lp.paper_point[i]);
        doc["profile_point"] = point;
        doc["ratio"] = exact(lp.paper_point_ratio);
        doc["matches_reference"] = lp.paper_point_ratio == lp.reference;
        doc["grid_best_ratio"] = exact(lp.grid_ratio);
        auto big_n = scaled_profile(id, power(BigInt(10), 12), s);
        doc["scaled_vertex_count"] = big(big_n.vertex_count);
        doc["scaled_ratio"] = exact(big_n.ratio);
        Rational gap = big_n.ratio - big_n.reference;
        if (gap < 0)
            gap = -gap;
        doc["scaled_relative_gap"] = to_decimal(gap / big_n.reference, 8);
        return doc;
    }
    auto built = build_construction(id, o);
    const auto& g = built.c.graph;
    const auto& prof = built.c.profile;
    doc["n"] = g.vertex_count();
    doc["m"] = g.edge_count();
    json measured;
    bool formula_ok;
    if (prof.codegree) {
        auto p = min_degree(g, 2);
        measured = exact(*p.k_ratio);
        doc["measured_min_codegree"] = big(*p.min_k_degree);
        formula_ok = *p.min_k_degree == prof.min_degree;
    } else {
        auto p = min_degree(g);
        measured = exact(p.ratio);
        doc["measured_min_degree"] = p.min_degree;
        formula_ok = BigInt(static_cast<unsigned long>(p.min_degree)) == prof.min_degree;
    }
    doc["measured_ratio"] = measured;
    doc["formula_min"] = big(prof.min_degree);
    doc["formula_matches"] = formula_ok;
    auto free = check_pattern(g, parse_pattern(built.pattern), o.max_nodes);
    doc["freeness"] = free;

    json chrom;
    SearchBudget b;
    b.max_nodes = 20'000'000;
    b.max_vertices = std::max<std::size_t>(b.max_vertices, g.vertex_count());
    try {
        auto res = chromatic_number(g, o.limit, b);
        chrom["chi"] = res.chi;
        chrom["validated"] = is_weak_coloring(g, res.witness);
    } catch (const Error& e) {
        chrom["status"] = e.kind() == ErrorKind::NotWithinLimit ? "chi > " + std::to_string(o.limit)
                                                                 : std::string("undetermined: ") + to_string(e.kind());
    }
    doc["chromatic"] = chrom;
    if (!formula_ok)
        throw ValidationFailure("profile formula disagrees with the materialized minimum degree", doc);
    if (!free["free"].get<bool>())
        throw ValidationFailure("construction contains its forbidden pattern", doc);
    return doc;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"hchrom: chromatic-threshold constructions for hypergraphs"};
    app.require_subcommand(1);
    app.add_flag("--json", o.json, "emit JSON instead of key=value lines");
    app.add_option("--seed", o.seed, "seed for randomized operations");
    app.add_option("--max-nodes", o.max_nodes, "search node budget");

    auto* gen = app.add_subcommand("gen", "generate a hypergraph");
    gen->add_option("family", o.family, "turan|cycle|kneser|book|tk|b3|named|<construction>")->required();
    gen->add_option("-n", o.n);
    gen->add_option("-r", o.r);
    gen->add_option("-s", o.s);
    gen->add_option("-m", o.m);
    gen->add_option("-k", o.k);
    gen->add_option("-t", o.t);
    gen->add_option("--u", o.u);
    gen->add_option("--v", o.v);
    gen->add_option("--w", o.w);
    gen->add_option("--x", o.x);
    gen->add_option("--eps", o.eps);
    gen->add_option("-N,--size", o.size);
    gen->add_option("--id", o.id);
    gen->add_option("--n1", o.n1);
    gen->add_option("--n2", o.n2);
    gen->add_option("-o,--output", o.output);
    gen->add_option("--labels", o.labels, "label sidecar path");

    auto* info = app.add_subcommand("info", "summary of a hypergraph file");
    info->add_option("file", o.file)->required();

    auto* chk = app.add_subcommand("check-free", "search for a pattern copy");
    chk->add_option("file", o.file)->required();
    chk->add_option("--pattern", o.pattern, "f5|f4|t5|fano|s7|k4|tkf:<s>|<file.nhg>");

    auto* chr = app.add_subcommand("chromatic", "exact chromatic number");
    chr->add_option("file", o.file)->required();
    chr->add_option("--limit", o.limit);

    auto* par = app.add_subcommand("partite", "s-partiteness");
    par->add_option("file", o.file)->required();
    par->add_option("-s", o.s)->required();

    auto* str = app.add_subcommand("structure", "near r-partitions and the extendibility gate");
    str->add_option("file", o.file)->required();
    str->add_option("-r", o.structure_r);

    auto* bun = app.add_subcommand("bundle", "fiber bundle operations");
    bun->require_subcommand(1);
    std::vector<CLI::App*> bundle_subs;
    for (const auto* name : {"dim", "refine", "color"}) {
        auto* sc = bun->add_subcommand(name);
        sc->add_option("file", o.file, "nfb bundle or nhg 3-graph (neighborhood bundle)")->required();
        sc->add_option("--mode", o.mode, "paper|practical");
        sc->add_option("--eps", o.eps);
        sc->add_option("--dim", o.dim);
        sc->add_option("--pattern", o.bundle_pattern, "pattern inside sections: edge (one fiber edge) or a pattern spec");
        sc->add_option("--alpha", o.alpha);
        sc->add_option("--eta", o.eta);
        sc->add_option("--beta", o.beta);
        sc->add_option("--lambda", o.lambda);
        bundle_subs.push_back(sc);
    }

    auto* cut = app.add_subcommand("cut", "cuts of 3-graph neighborhood bundles");
    cut->require_subcommand(1);
    auto* cut_find = cut->add_subcommand("find", "5-cut of an F5-free 3-graph");
    cut_find->add_option("file", o.file)->required();
    cut_find->add_option("-o,--output", o.output, "write the cut");
    auto* cut_low = cut->add_subcommand("lowind", "low strong-independence set");
    cut_low->add_option("file", o.file)->required();
    cut_low->add_option("-d", o.d);
    cut_low->add_option("-q", o.q);
    cut_low->add_option("--eps", o.eps);

    auto* kn = app.add_subcommand("kneser", "weighted families and Kneser colorings");
    kn->require_subcommand(1);
    auto* kw = kn->add_subcommand("weight", "weighted size of an nsf family");
    kw->add_option("file", o.file)->required();
    kw->add_option("--w", o.weight);
    kw->add_flag("--closure", o.closure, "take the upward closure first");
    auto* ki = kn->add_subcommand("intersecting", "r-wise intersection check");
    ki->add_option("file", o.file)->required();
    ki->add_option("-r", o.r);
    auto* kc = kn->add_subcommand("certify", "union-closure bounds for a coloring of KG^r_{r-1}(n,k)");
    kc->add_option("-n", o.n)->required();
    kc->add_option("-k", o.k)->required();
    kc->add_option("-r", o.r);
    kc->add_option("-s", o.s);
    kc->add_option("--colors", o.colors, "use a proper coloring with this many colors");
    kc->add_option("--coloring", o.coloring, "file of whitespace-separated colors");
    kc->add_option("--limit", o.limit);

    auto* rep = app.add_subcommand("report", "threshold report for a construction");
    rep->add_option("construction", o.family)->required();
    rep->add_flag("--profile", o.profile, "symbolic limit profile only");
    rep->add_option("-k", o.k);
    rep->add_option("-t", o.t);
    rep->add_option("-s", o.s);
    rep->add_option("--u", o.u);
    rep->add_option("--v", o.v);
    rep->add_option("--w", o.w);
    rep->add_option("--x", o.x);
    rep->add_option("--eps", o.eps);
    rep->add_option("-N,--size", o.size);
    rep->add_option("--limit", o.limit);

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i >= 1; --i)
            args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage: " << e.what() << '\n';
        return 2;
    }

    json doc;
    try {
        if (*gen)
            doc = cmd_gen(o, out);
        else if (*info)
            doc = cmd_info(o);
        else if (*chk)
            doc = cmd_check_free(o);
        else if (*chr)
            doc = cmd_chromatic(o);
        else if (*par)
            doc = cmd_partite(o);
        else if (*str)
            doc = cmd_structure(o);
        else if (*bun) {
            for (auto* sc : bundle_subs)
                if (*sc)
                    o.sub = sc->get_name();
            doc = cmd_bundle(o);
        } else if (*cut) {
            o.sub = *cut_find ? "find" : "lowind";
            doc = cmd_cut(o);
        } else if (*kn) {
            o.sub = *kw ? "weight" : *ki ? "intersecting" : "certify";
            doc = cmd_kneser(o);
        } else if (*rep)
            doc = cmd_report(o);
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << '\n';
        return 2;
    } catch (const ValidationFailure& e) {
        if (!e.doc.is_null())
            emit(out, e.doc, o.json);
        json diag{{"status", "failed"}, {"reason", e.what()}};
        emit(err, diag, o.json);
        return 1;
    } catch (const Error& e) {
        json diag{{"status", "error"}, {"kind", to_string(e.kind())}, {"message", e.what()}};
        if (!e.witness().empty())
            diag["witness"] = e.witness();
        emit(err, diag, o.json);
        return 1;
    }
    if (!doc.is_null())
        emit(out, doc, o.json);
    return 0;
}

} // namespace hyperchrom::cli
