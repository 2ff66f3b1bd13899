#include "zf/harness.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "json.hpp"
#include "zf/chains.hpp"
#include "zf/drawing.hpp"
#include "zf/forcing.hpp"

namespace zf {

namespace {

using ojson = nlohmann::ordered_json;

const std::vector<std::pair<Check, std::string>>& check_names() {
    static const std::vector<std::pair<Check, std::string>> names = {
        {Check::T_iff, "T_iff"},   {Check::T_fmk, "T_fmk"},     {Check::C_ft, "C_ft"},
        {Check::P_left, "P_left"}, {Check::L_order, "L_order"}, {Check::E_bounds, "E_bounds"}};
    return names;
}

std::string record_key(const Graph& g) { return g.order() <= 10 ? canonical_form(g) : encode_graph6(g); }

bool is_path(const Graph& g) { return g.is_connected() && g.size() == g.order() - 1 && g.max_degree() <= 2; }

class Stopwatch {
public:
    explicit Stopwatch(std::map<std::string, double>& sink) : sink_(sink) {}
    template <typename F>
    auto time(const std::string& stage, F&& f) {
        const auto t0 = std::chrono::steady_clock::now();
        struct Done {
            std::map<std::string, double>& sink;
            const std::string& stage;
            std::chrono::steady_clock::time_point t0;
            ~Done() {
                sink[stage] += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            }
        } done{sink_, stage, t0};
        return f();
    }

private:
    std::map<std::string, double>& sink_;
};

template <typename T>
ojson opt_json(const std::optional<T>& v) {
    return v ? ojson(*v) : ojson(nullptr);
}

template <typename T>
std::optional<T> opt_from(const nlohmann::json& j, const char* key) {
    const auto& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    return v.get<T>();
}

// Records of one check stage: pass/fail bookkeeping plus violation text.
struct Verdict {
    CheckRecord& r;
    std::string name;
    bool ok = true;
    bool skipped = false;
    void fail(const std::string& why) {
        ok = false;
        r.violations.push_back(name + ": " + why);
    }
    ~Verdict() { r.lemma_checks[name] = !ok ? "fail" : skipped ? "skip" : "pass"; }
};

}  // namespace

std::string to_string(Check c) {
    for (const auto& [check, name] : check_names())
        if (check == c) return name;
    return "?";
}

Check check_from_string(const std::string& name) {
    for (const auto& [check, n] : check_names())
        if (n == name) return check;
    throw UsageError("unknown check '" + name + "'");
}

const std::set<Check>& all_checks() {
    static const std::set<Check> all = [] {
        std::set<Check> s;
        for (const auto& [c, name] : check_names()) s.insert(c);
        return s;
    }();
    return all;
}

std::string record_to_json(const CheckRecord& r) {
    ojson j;
    j["graph"] = r.graph;
    j["n"] = r.n;
    j["f"] = opt_json(r.f);
    j["f_t"] = opt_json(r.f_t);
    j["tag"] = r.tag;
    j["m_certified"] = opt_json(r.m_certified);
    j["drawing_ok"] = opt_json(r.drawing_ok);
    j["drawing_rows"] = opt_json(r.drawing_rows);
    j["lemma_checks"] = r.lemma_checks;
    j["violations"] = r.violations;
    j["advisories"] = r.advisories;
    j["skipped"] = opt_json(r.skipped);
    j["timings"] = r.timings;
    return j.dump();
}

CheckRecord record_from_json(const std::string& line) {
    try {
        const auto j = nlohmann::json::parse(line);
        CheckRecord r;
        r.graph = j.at("graph").get<std::string>();
        r.n = j.at("n").get<int>();
        r.f = opt_from<int>(j, "f");
        r.f_t = opt_from<int>(j, "f_t");
        r.tag = j.at("tag").get<std::string>();
        r.m_certified = opt_from<int>(j, "m_certified");
        r.drawing_ok = opt_from<bool>(j, "drawing_ok");
        r.drawing_rows = opt_from<int>(j, "drawing_rows");
        r.lemma_checks = j.at("lemma_checks").get<std::map<std::string, std::string>>();
        r.violations = j.at("violations").get<std::vector<std::string>>();
        r.advisories = j.at("advisories").get<std::vector<std::string>>();
        r.skipped = opt_from<std::string>(j, "skipped");
        r.timings = j.at("timings").get<std::map<std::string, double>>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("corrupt result record: ") + e.what());
    }
}

Corpus builtin_corpus(int nmax) {
    if (nmax < 1 || nmax > 8) throw UnsupportedSize("builtin corpus supports 1 <= nmax <= 8");
    Corpus c;
    c.id = "builtin:nmax=" + std::to_string(nmax);
    std::set<std::string> seen;
    auto add = [&](const Graph& g) {
        if (seen.insert(canonical_form(g)).second) c.graphs.push_back(g);
    };
    for (int n = 1; n <= nmax; ++n)
        for (const auto& g : enumerate_connected_subcubic(n)) add(g);
    Graph copies = path_graph(2);
    for (int j = 1; j <= 4; ++j, copies = disjoint_union(copies, path_graph(2))) add(copies);
    for (int a = 1; 2 * a <= nmax; ++a)
        for (int b = a; a + b <= nmax; ++b) add(disjoint_union(path_graph(a), path_graph(b)));
    return c;
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read corpus '" + path + "'");
    Corpus c;
    c.id = "file:" + path;
    c.graphs = read_graph6_stream(in);
    return c;
}

CheckRecord check_graph(const Graph& g, const SuiteOptions& opt) {
    CheckRecord r;
    r.n = g.order();
    r.graph = record_key(g);
    if (g.max_degree() > 3) {
        r.tag = "Beyond";
        r.skipped = "max degree above 3";
        return r;
    }
    Stopwatch sw(r.timings);
    auto wants = [&](Check c) { return opt.checks.count(c) > 0; };
    auto guarded = [&](Verdict& v, auto&& body) {
        try {
            body();
        } catch (const Error& e) {
            v.fail(e.what());
        }
    };

    const auto fn = sw.time("forcing", [&] { return forcing_number(g); });
    const int f = fn.k;
    r.f = f;
    if (g.order() > 0 && !g.has_isolated_vertex()) r.f_t = sw.time("total_forcing", [&] { return total_forcing_number(g).k; });
    const auto cls = sw.time("classify", [&] { return classify(g); });
    r.tag = to_string(cls.tag);

    if (wants(Check::E_bounds)) {
        Verdict v{r, "E_bounds"};
        if (r.f_t && (*r.f_t < f || *r.f_t > 2 * f))
            v.fail("F <= F_t <= 2F broken: F=" + std::to_string(f) + " F_t=" + std::to_string(*r.f_t));
        if (g.is_connected() && 2 * f > g.order() + 2)
            v.fail("F <= n/2 + 1 broken: F=" + std::to_string(f) + " n=" + std::to_string(g.order()));
    }

    // The pipeline drawing: chain rows for F <= 2, the repaired construction for F = 3.
    std::optional<StandardDrawing> drawing;
    std::string drawing_error;
    if (f >= 1 && f <= 3) {
        try {
            drawing = sw.time("drawing", [&] { return f == 3 ? build_standard_drawing(g) : drawing_from_chains(g); });
            const bool ok = verify_drawing(g, *drawing).ok && drawing->k() == f;
            r.drawing_ok = ok;
            r.drawing_rows = drawing->k();
            if (!ok) drawing.reset();
        } catch (const Error& e) {
            r.drawing_ok = false;
            drawing_error = e.what();
        }
    }

    if (wants(Check::T_iff)) {
        Verdict v{r, "T_iff"};
        if (f == 3 && !drawing) v.fail("no verified 3-row drawing " + drawing_error);
        if (f != 3) {
            try {
                build_standard_drawing(g);
                v.fail("3-row construction accepted a graph with F=" + std::to_string(f));
            } catch (const UnsupportedInput&) {
            } catch (const Error& e) {
                v.fail(std::string("unexpected refusal: ") + e.what());
            }
        }
        if (g.order() <= 8)
            guarded(v, [&] {
                const auto found = sw.time("search", [&] { return search_drawing(g, 3); });
                if (f <= 3 && (!found || found->k() != f)) v.fail("exact search disagrees with F for at most 3 rows");
                if (f > 3 && found) v.fail("exact search found a drawing with at most 3 rows while F > 3");
            });
    }

    if (wants(Check::P_left)) {
        Verdict v{r, "P_left"};
        if (drawing) {
            const auto left = leftmost_set(*drawing);
            if (static_cast<int>(left.size()) != drawing->k() || !is_forcing_set(g, left))
                v.fail("left-most vertices do not force");
        } else {
            v.skipped = true;
        }
    }

    if (wants(Check::C_ft)) {
        Verdict v{r, "C_ft"};
        if (!drawing || !r.f_t) v.skipped = true;
        else if (*r.f_t > 2 * drawing->k())
            v.fail("F_t > 2k for a verified " + std::to_string(drawing->k()) + "-row drawing");
    }

    if (wants(Check::L_order)) {
        Verdict v{r, "L_order"};
        guarded(v, [&] {
            sw.time("lemmas", [&] {
                const ChainSet s = extract_chains(g, closure(g, fn.witness));
                auto scan = [&](const ChainSet& cs, const char* which) {
                    const auto rep = check_order_lemmas(cs);
                    for (const auto& msg : rep.violations) v.fail(std::string(which) + " " + msg);
                };
                scan(s, "run chains:");
                if (f == 3) scan(eliminate_unfavorite(eliminate_bad(s)), "repaired chains:");
                return 0;
            });
        });
    }

    if (wants(Check::T_fmk) && !cls.m) r.lemma_checks["T_fmk"] = "skip";
    if (wants(Check::T_fmk) && cls.m) {
        Verdict v{r, "T_fmk"};
        guarded(v, [&] {
            const int m = *cls.m;
            if (f == 1 && !is_path(g)) v.fail("F=1 but not a path");
            if (f == 2 && !(drawing && drawing->k() == 2)) v.fail("F=2 without a verified 2-row drawing");
            const auto res = sw.time("nullity", [&] { return maximize_nullity(g, m, opt.nullity); });
            r.m_certified = res.achieved() ? m : res.best_k;
            if (!res.achieved()) {
                v.fail("optimizer did not certify nullity " + std::to_string(m));
                if (cls.tag == ClassTag::ThreeParallel_FM3 && maximize_nullity(g, 2, opt.nullity).achieved())
                    r.advisories.push_back("F=3 graph certifies only 2 and is not a figure-8 instance");
            }
            if (*r.m_certified > f) v.fail("certified nullity above F");
            if (opt.advisory_factor > 0 && m + 1 <= g.order()) {
                NullityOptions more = opt.nullity;
                more.restarts *= opt.advisory_factor;
                if (sw.time("nullity_probe", [&] { return maximize_nullity(g, m + 1, more); }).achieved())
                    r.advisories.push_back("optimizer certified nullity " + std::to_string(m + 1) + " above the classified m");
            }
        });
    }
    return r;
}

SuiteReport load_report(const std::string& corpus_id, const std::string& results_path) {
    std::ifstream in(results_path);
    if (!in) throw IoError("cannot read results '" + results_path + "'");
    SuiteReport rep;
    rep.corpus_id = corpus_id;
    for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        rep.records.push_back(record_from_json(line));
    }
    for (const auto& r : rep.records) {
        ++rep.totals[r.skipped ? "Skipped" : r.tag];
        if (r.failed()) rep.violations.push_back(r);
    }
    rep.cursor = rep.records.size();
    rep.complete = true;
    return rep;
}

SuiteReport run_suite(const Corpus& corpus, const SuiteOptions& opt) {
    std::unordered_map<std::string, CheckRecord> done;
    const bool persist = !opt.results_path.empty();
    if (persist && opt.resume) {
        std::ifstream in(opt.results_path);
        for (std::string line; in && std::getline(in, line);) {
            if (line.empty()) continue;
            auto r = record_from_json(line);
            done.emplace(r.graph, std::move(r));
        }
    }
    std::ofstream out;
    if (persist) {
        out.open(opt.results_path, opt.resume ? std::ios::app : std::ios::trunc);
        if (!out) throw IoError("cannot write results '" + opt.results_path + "'");
    }

    // Pending work in corpus order, one entry per key.
    std::vector<std::string> keys(corpus.graphs.size());
    std::vector<std::size_t> pending;
    std::set<std::string> queued;
    for (std::size_t i = 0; i < corpus.graphs.size(); ++i) {
        keys[i] = record_key(corpus.graphs[i]);
        if (!done.count(keys[i]) && queued.insert(keys[i]).second) pending.push_back(i);
    }
    std::size_t limit = pending.size();
    if (opt.max_records) limit = std::min(limit, *opt.max_records);

    const std::size_t batch = static_cast<std::size_t>(std::max(1, opt.workers));
    for (std::size_t start = 0; start < limit; start += batch) {
        const std::size_t end = std::min(limit, start + batch);
        std::vector<CheckRecord> results(end - start);
        std::vector<std::thread> pool;
        for (std::size_t i = start + 1; i < end; ++i)
            pool.emplace_back([&, i] { results[i - start] = check_graph(corpus.graphs[pending[i]], opt); });
        results[0] = check_graph(corpus.graphs[pending[start]], opt);
        for (auto& t : pool) t.join();
        // Single writer, corpus order.
        for (auto& r : results) {
            if (persist) out << record_to_json(r) << '\n' << std::flush;
            done.emplace(r.graph, std::move(r));
        }
    }

    SuiteReport rep;
    rep.corpus_id = corpus.id;
    std::set<std::string> emitted;
    rep.complete = true;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const auto it = done.find(keys[i]);
        if (it == done.end()) {
            rep.complete = false;
            continue;
        }
        if (rep.complete) rep.cursor = i + 1;
        if (!emitted.insert(keys[i]).second) continue;
        const auto& r = it->second;
        rep.records.push_back(r);
        ++rep.totals[r.skipped ? "Skipped" : r.tag];
        if (r.failed()) rep.violations.push_back(r);
    }
    return rep;
}

std::string diff_reports(const SuiteReport& a, const SuiteReport& b) {
    if (a.corpus_id != b.corpus_id) throw UsageError("reports cover different corpora: " + a.corpus_id + " vs " + b.corpus_id);
    std::map<std::string, const CheckRecord*> right;
    for (const auto& r : b.records) right[r.graph] = &r;
    std::ostringstream out;
    auto field = [&](const std::string& key, const char* name, const nlohmann::json& x, const nlohmann::json& y) {
        if (x != y) out << key << ' ' << name << ": " << x.dump() << " -> " << y.dump() << '\n';
    };
    std::set<std::string> seen;
    for (const auto& r : a.records) {
        seen.insert(r.graph);
        const auto it = right.find(r.graph);
        if (it == right.end()) {
            out << r.graph << " only in first report\n";
            continue;
        }
        // Compare through JSON with timings dropped.
        auto x = nlohmann::json::parse(record_to_json(r));
        auto y = nlohmann::json::parse(record_to_json(*it->second));
        for (const char* name : {"n", "f", "f_t", "tag", "m_certified", "drawing_ok", "drawing_rows", "lemma_checks",
                                 "violations", "advisories", "skipped"})
            field(r.graph, name, x.at(name), y.at(name));
    }
    for (const auto& r : b.records)
        if (!seen.count(r.graph)) out << r.graph << " only in second report\n";
    return out.str();
}

std::string report_summary_json(const SuiteReport& r) {
    ojson j;
    j["corpus"] = r.corpus_id;
    j["records"] = r.records.size();
    j["complete"] = r.complete;
    j["totals"] = r.totals;
    ojson bad = ojson::array();
    for (const auto& v : r.violations) bad.push_back({{"graph", v.graph}, {"violations", v.violations}});
    j["violations"] = bad;
    std::size_t advisories = 0;
    for (const auto& rec : r.records) advisories += rec.advisories.size();
    j["advisories"] = advisories;
    j["ok"] = r.ok();
    return j.dump();
}

}  // namespace zf
