#include "zf/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "zf/chains.hpp"
#include "zf/drawing.hpp"
#include "zf/forcing.hpp"
#include "zf/harness.hpp"
#include "zf/nullity.hpp"

namespace zf {

namespace {

using ojson = nlohmann::ordered_json;

std::vector<int> parse_set(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("bad vertex list '" + text + "'");
        }
    }
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f || !(f << text)) throw IoError("cannot write '" + path + "'");
}

ojson drawing_json(const StandardDrawing& d) { return ojson::parse(render(d, RenderFormat::Json)); }

// Shared state filled by CLI11, read by the dispatcher.
struct Config {
    std::string input, file, set, out, format, corpus, checks, results;
    int target = 1, k = 3, nmax = 0, n = 0, workers = 1, advisory_factor = 0;
    int restarts = 50, iterations = 2000;
    std::uint64_t seed = 1, budget = 20000;
    bool resume = false, repair = false;
};

Graph input_graph(const Config& c) {
    if (!c.input.empty() && !c.file.empty()) throw UsageError("give either a graph token or --file, not both");
    if (!c.file.empty()) {
        std::ifstream in(c.file);
        if (!in) throw IoError("cannot read '" + c.file + "'");
        const auto gs = read_graph6_stream(in);
        if (gs.size() != 1) throw UsageError("--file must hold exactly one graph6 record");
        return gs.front();
    }
    if (c.input.empty()) throw UsageError("missing graph input");
    return resolve_graph(c.input);
}

NullityOptions nullity_options(const Config& c) {
    NullityOptions o;
    o.restarts = c.restarts;
    o.iterations = c.iterations;
    o.seed = c.seed;
    o.workers = c.workers;
    return o;
}

int cmd_fnum(const Config& c, std::ostream& out, std::ostream& err, bool total) {
    const Graph g = input_graph(c);
    const auto r = total ? total_forcing_number(g) : forcing_number(g);
    ojson j;
    j[total ? "f_t" : "f"] = r.k;
    j["witness"] = r.witness;
    out << j.dump() << '\n';
    err << (total ? "total forcing number " : "forcing number ") << r.k << '\n';
    return 0;
}

int cmd_closure(const Config& c, std::ostream& out, std::ostream& err) {
    const Graph g = input_graph(c);
    const auto r = closure(g, parse_set(c.set));
    ojson j;
    j["complete"] = r.complete;
    j["derived"] = r.derived;
    j["layers"] = r.run.layers;
    ojson events = ojson::array();
    for (const auto& e : r.run.events) events.push_back({{"forcer", e.forcer}, {"forced", e.forced}, {"step", e.step}});
    j["events"] = events;
    out << j.dump() << '\n';
    err << "derived " << r.derived.size() << " of " << g.order() << " vertices in " << r.run.layers.size() - 1
        << " steps" << (r.complete ? " (forcing set)" : "") << '\n';
    return 0;
}

int cmd_chains(const Config& c, std::ostream& out, std::ostream& err) {
    const Graph g = input_graph(c);
    const auto initial = c.set.empty() ? forcing_number(g).witness : parse_set(c.set);
    const auto outcome = closure(g, initial);
    ChainSet s = extract_chains(g, outcome);
    if (c.repair) s = eliminate_unfavorite(eliminate_bad(s));
    ojson j;
    ojson chains = ojson::array();
    for (const auto& ch : s.chains()) chains.push_back(ch.seq);
    j["chains"] = chains;
    j["origin"] = s.origin();
    j["bad"] = bad_vertices(s);
    j["unfavorite"] = unfavorite_vertices(s);
    const auto lemmas = check_order_lemmas(s);
    j["order_lemmas"] = lemmas.ok();
    out << j.dump() << '\n';
    err << s.chains().size() << " chains, " << s.trivial_count() << " trivial\n";
    return 0;
}

std::optional<StandardDrawing> pipeline_drawing(const Graph& g, const Config& c) {
    const int f = forcing_number(g).k;
    if (f <= 2 && g.order() > 0) return drawing_from_chains(g);
    if (f == 3 && g.max_degree() <= 3) return build_standard_drawing(g);
    if (g.order() > 8) throw UnsupportedInput("no drawing pipeline for this graph and n > 8");
    SearchOptions so;
    so.budget = c.budget;
    so.seed = c.seed;
    return search_drawing(g, g.order(), so);
}

RenderFormat format_of(const Config& c) {
    std::string f = c.format;
    if (f.empty()) {
        const auto dot = c.out.rfind('.');
        f = dot == std::string::npos ? "json" : c.out.substr(dot + 1);
    }
    if (f == "svg") return RenderFormat::Svg;
    if (f == "dot") return RenderFormat::Dot;
    if (f == "json") return RenderFormat::Json;
    throw UsageError("unknown format '" + f + "'");
}

int cmd_draw(const Config& c, std::ostream& out, std::ostream& err) {
    const Graph g = input_graph(c);
    const RenderFormat fmt = format_of(c);
    if (fmt != RenderFormat::Json && c.out.empty()) throw UsageError("svg and dot output need --out");
    const auto d = pipeline_drawing(g, c);
    if (!d) {
        out << ojson{{"found", false}}.dump() << '\n';
        err << "no drawing found within the search budget\n";
        return 1;
    }
    if (c.out.empty()) {
        out << render(*d, fmt) << '\n';
    } else {
        write_file(c.out, render(*d, fmt));
        out << ojson{{"found", true}, {"k", d->k()}, {"out", c.out}}.dump() << '\n';
    }
    err << "drawing with " << d->k() << " rows\n";
    return 0;
}

int cmd_search(const Config& c, std::ostream& out, std::ostream& err) {
    const Graph g = input_graph(c);
    SearchOptions so;
    so.budget = c.budget;
    so.seed = c.seed;
    const auto d = search_drawing(g, c.k, so);
    ojson j;
    j["found"] = d.has_value();
    if (d) j["drawing"] = drawing_json(*d);
    out << j.dump() << '\n';
    if (d) err << "found a drawing with " << d->k() << " rows\n";
    else err << "no drawing with at most " << c.k << " rows" << (c.k <= 3 ? " exists\n" : " found (advisory)\n");
    return d ? 0 : 1;
}

int cmd_classify(const Config& c, std::ostream& out, std::ostream& err) {
    const Graph g = input_graph(c);
    const auto cls = classify(g);
    ojson j;
    j["tag"] = to_string(cls.tag);
    j["f"] = cls.f;
    j["m"] = cls.m ? ojson(*cls.m) : ojson(nullptr);
    out << j.dump() << '\n';
    err << to_string(cls.tag) << '\n';
    return 0;
}

int cmd_nullity(const Config& c, std::ostream& out, std::ostream& err) {
    const Graph g = input_graph(c);
    const auto r = maximize_nullity(g, c.target, nullity_options(c));
    ojson j;
    j["achieved"] = r.achieved();
    j["target"] = c.target;
    j["best_k"] = r.best_k;
    j["restart"] = r.restart;
    j["iterations"] = r.iterations;
    if (r.achieved()) {
        const std::string cert = certificate_to_json(*r.certificate);
        if (!c.out.empty()) write_file(c.out, cert);
        j["certificate"] = ojson::parse(cert);
    }
    out << j.dump() << '\n';
    if (r.achieved()) err << "certified nullity " << c.target << " (a lower bound on the maximum nullity)\n";
    else err << "target " << c.target << " not reached; best certified " << r.best_k << '\n';
    return r.achieved() ? 0 : 1;
}

int cmd_verify(const Config& c, std::ostream& out, std::ostream& err) {
    if ((c.nmax > 0) == !c.corpus.empty()) throw UsageError("verify needs exactly one of --nmax and --corpus");
    const Corpus corpus = c.nmax > 0 ? builtin_corpus(c.nmax) : load_corpus(c.corpus);
    SuiteOptions opt;
    if (!c.checks.empty()) {
        opt.checks.clear();
        std::stringstream ss(c.checks);
        for (std::string name; std::getline(ss, name, ',');) opt.checks.insert(check_from_string(name));
    }
    opt.results_path = c.results;
    opt.resume = c.resume;
    if (c.resume && c.results.empty()) throw UsageError("--resume needs --results");
    opt.nullity = nullity_options(c);
    opt.nullity.workers = 1;
    opt.workers = c.workers;
    opt.advisory_factor = c.advisory_factor;
    const auto rep = run_suite(corpus, opt);
    out << report_summary_json(rep) << '\n';
    err << corpus.id << ": " << rep.records.size() << " records, " << rep.violations.size() << " with violations\n";
    for (const auto& r : rep.violations)
        for (const auto& v : r.violations) err << "  " << r.graph << ": " << v << '\n';
    return rep.ok() ? 0 : 1;
}

int cmd_enumerate(const Config& c, std::ostream& out, std::ostream& err) {
    const auto gs = enumerate_connected_subcubic(c.n);
    ojson j;
    j["n"] = c.n;
    j["count"] = gs.size();
    ojson list = ojson::array();
    for (const auto& g : gs) list.push_back(encode_graph6(g));
    j["graphs"] = list;
    out << j.dump() << '\n';
    err << gs.size() << " connected subcubic graphs on " << c.n << " vertices\n";
    return 0;
}

}  // namespace

Graph resolve_graph(const std::string& token) {
    Graph g;
    if (try_parse_builtin(token, g)) return g;
    try {
        return parse_graph6(token);
    } catch (const ParseError& e) {
        throw UsageError("'" + token + "' is neither a builtin graph nor valid graph6 (" + e.what() + ")");
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"zero forcing, parallel-path drawings and maximum nullity"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");
    app.add_option("--seed", c.seed, "random seed (ZF_SEED overrides)");

    auto graph_cmd = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("graph", c.input, "builtin name or graph6");
        sub->add_option("--file", c.file, "file with one graph6 record");
        sub->add_option("--seed", c.seed, "random seed (ZF_SEED overrides)");
        return sub;
    };
    auto* fnum = graph_cmd("fnum", "forcing number and witness");
    auto* tfnum = graph_cmd("tfnum", "total forcing number and witness");
    auto* clo = graph_cmd("closure", "synchronous forcing transcript");
    clo->add_option("--set", c.set, "initial set, e.g. 0,3")->required();
    auto* chains = graph_cmd("chains", "forcing chains of a (default minimum) forcing set");
    chains->add_option("--set", c.set, "initial forcing set");
    chains->add_flag("--repair", c.repair, "remove bad and unfavorite vertices (three chains, max degree 3)");
    auto* draw = graph_cmd("draw", "parallel-path drawing");
    draw->add_option("--out", c.out, "output path");
    draw->add_option("--format", c.format, "svg, dot or json (default from --out, else json)");
    draw->add_option("--budget", c.budget, "placements for four or more rows");
    auto* cls = graph_cmd("classify", "classification for max degree 3");
    auto* nul = graph_cmd("nullity", "search for a pattern matrix of given nullity");
    nul->add_option("--target", c.target, "nullity to certify")->required();
    nul->add_option("--restarts", c.restarts, "restarts");
    nul->add_option("--iterations", c.iterations, "iterations per restart");
    nul->add_option("--workers", c.workers, "threads");
    nul->add_option("--out", c.out, "certificate JSON path");
    auto* search = graph_cmd("search-draw", "drawing with at most k rows");
    search->add_option("--k", c.k, "row bound")->required();
    search->add_option("--budget", c.budget, "placements for four or more rows");
    auto* verify = app.add_subcommand("verify", "run the theorem checks over a corpus");
    verify->add_option("--nmax", c.nmax, "builtin corpus up to this order (1..8)");
    verify->add_option("--corpus", c.corpus, "graph6 file");
    verify->add_option("--checks", c.checks, "comma list of T_iff,T_fmk,C_ft,P_left,L_order,E_bounds");
    verify->add_option("--results", c.results, "JSONL results file");
    verify->add_flag("--resume", c.resume, "skip graphs already in --results");
    verify->add_option("--workers", c.workers, "graphs checked in parallel");
    verify->add_option("--restarts", c.restarts, "nullity restarts");
    verify->add_option("--iterations", c.iterations, "nullity iterations per restart");
    verify->add_option("--advisory-factor", c.advisory_factor, "budget factor for the m+1 probe (0 skips)");
    verify->add_option("--seed", c.seed, "random seed (ZF_SEED overrides)");
    auto* en = app.add_subcommand("enumerate", "connected subcubic graphs");
    en->add_option("--n", c.n, "order (1..8)")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, err, err);
        return code == 0 ? 0 : 2;
    }
    if (const char* env = std::getenv("ZF_SEED")) {
        try {
            c.seed = std::stoull(env);
        } catch (const std::exception&) {
            err << "error: ZF_SEED must be a nonnegative integer\n";
            return 2;
        }
    }

    try {
        if (*fnum) return cmd_fnum(c, out, err, false);
        if (*tfnum) return cmd_fnum(c, out, err, true);
        if (*clo) return cmd_closure(c, out, err);
        if (*chains) return cmd_chains(c, out, err);
        if (*draw) return cmd_draw(c, out, err);
        if (*cls) return cmd_classify(c, out, err);
        if (*nul) return cmd_nullity(c, out, err);
        if (*search) return cmd_search(c, out, err);
        if (*verify) return cmd_verify(c, out, err);
        if (*en) return cmd_enumerate(c, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace zf
