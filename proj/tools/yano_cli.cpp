// Command-line front end: invariant reports, series expansion, candidate
// sets, residue verification and combinatorial sweeps.
//
// Exit codes: 0 pass, 1 check/tolerance failure, 2 validation error,
// 3 inconclusive positivity.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "yano/json_io.hpp"
#include "yano/pipelines.hpp"

namespace fs = std::filesystem;
using namespace yano;

namespace {

struct GlobalOpts {
    long long n1 = 0, m = 0, n2 = 0, q = 0;
    std::string format = "json";
    std::string cache_dir;
    bool no_cache = false;
    long long seed = 0;   // reserved; numerics are deterministic
    QuadratureConfig quad;
};

std::string resolve_cache_dir(const GlobalOpts& g) {
    if (g.no_cache) return "";
    if (!g.cache_dir.empty()) return g.cache_dir;
    if (const char* env = std::getenv("YANO_CACHE_DIR")) return env;
    return ".yano-cache";
}

// --config provides defaults; explicit flags still win because the file is
// loaded before CLI11 overwrites the bound variables.
void load_config_defaults(const std::string& path, GlobalOpts& g, std::string& family,
                          std::string& root_sel, double& tol, long long& max_m,
                          long long& max_n2, long long& max_q, int& jobs) {
    std::ifstream in(path);
    if (!in) throw RangeViolation("cannot open config file " + path);
    Json cfg = Json::parse(in);
    auto geti = [&](const char* k, long long& v) { if (cfg.contains(k)) v = cfg[k].get<long long>(); };
    auto getd = [&](const char* k, double& v) { if (cfg.contains(k)) v = cfg[k].get<double>(); };
    auto gets = [&](const char* k, std::string& v) { if (cfg.contains(k)) v = cfg[k].get<std::string>(); };
    geti("n1", g.n1);
    geti("m", g.m);
    geti("n2", g.n2);
    geti("q", g.q);
    gets("format", g.format);
    gets("cache_dir", g.cache_dir);
    getd("abs_tol", g.quad.abs_tol);
    getd("rel_tol", g.quad.rel_tol);
    if (cfg.contains("max_subdiv")) g.quad.max_subdivisions = cfg["max_subdiv"].get<int>();
    if (cfg.contains("prec_bits")) g.quad.precision_bits = cfg["prec_bits"].get<int>();
    if (cfg.contains("taylor_bump")) g.quad.taylor_bump = cfg["taylor_bump"].get<int>();
    gets("family", family);
    gets("root", root_sel);
    getd("tol", tol);
    geti("max_m", max_m);
    geti("max_n2", max_n2);
    geti("max_q", max_q);
    if (cfg.contains("jobs")) jobs = cfg["jobs"].get<int>();
}

std::string csv_escape(const std::string& s) { return s; }

void emit(const GlobalOpts& g, const Json& doc,
          const std::function<void(std::ostream&)>& text_writer,
          const std::function<void(std::ostream&)>& csv_writer) {
    if (g.format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else if (g.format == "csv") {
        csv_writer(std::cout);
    } else {
        text_writer(std::cout);
    }
}

CurveClass parse_class(const GlobalOpts& g) { return validate_class(g.n1, g.m, g.n2, g.q); }

// ---------------------------------------------------------------------- //

int cmd_invariants(const GlobalOpts& g) {
    auto cc = parse_class(g);
    auto cs = characteristic_sequence(cc);
    auto d = exponent_data(cs);
    auto sg = semigroup(cc);
    Json doc{{"class", Json{{"n1", cc.n1}, {"m", cc.m}, {"n2", cc.n2}, {"q", cc.q}}},
             {"distinct_eigenvalues", cc.distinct_eigenvalues},
             {"characteristic_sequence", Json{{"n", cs.n}, {"betas", cs.betas}}},
             {"exponent_data",
              Json{{"e", d.e}, {"R", d.R}, {"r", d.r}, {"Rp", d.Rp}, {"rp", d.rp}}},
             {"mu", milnor_number(cc)},
             {"semigroup", Json{{"generators", sg.generators()},
                                {"conductor", sg.conductor()},
                                {"gap_count", (long long)sg.gaps().size()}}}};
    emit(
        g, doc,
        [&](std::ostream& os) {
            os << "class (" << cc.n1 << "," << cc.m << "," << cc.n2 << "," << cc.q << ")\n"
               << "characteristic sequence (" << cs.n << ";" << cs.betas[0] << ","
               << cs.betas[1] << ")\n"
               << "mu = " << milnor_number(cc) << "\n"
               << "semigroup conductor = " << sg.conductor()
               << ", gaps = " << sg.gaps().size() << "\n"
               << "distinct eigenvalues: " << (cc.distinct_eigenvalues ? "yes" : "no")
               << "\n";
        },
        [&](std::ostream& os) {
            os << "invariant,value\n";
            os << "n," << cs.n << "\n";
            os << "beta1," << cs.betas[0] << "\n";
            os << "beta2," << cs.betas[1] << "\n";
            os << "mu," << milnor_number(cc) << "\n";
            os << "conductor," << sg.conductor() << "\n";
            os << "gap_count," << sg.gaps().size() << "\n";
            os << "distinct_eigenvalues," << cc.distinct_eigenvalues << "\n";
        });
    return 0;
}

// ---------------------------------------------------------------------- //

int cmd_series(const GlobalOpts& g, bool check) {
    CharacteristicSequence cs;
    if (g.n2 == 0 && g.q == 0) {
        // one-Puiseux-pair mode: characteristic (n1, m)
        if (!(g.n1 > 1 && g.m > g.n1 && std::gcd(g.n1, g.m) == 1))
            throw RangeViolation("series: need coprime 1 < n1 < m");
        cs = {g.n1, {g.m}};
    } else {
        cs = characteristic_sequence(parse_class(g));
    }
    auto s = expand_generating_series(cs);
    Json doc{{"characteristic", Json{{"n", cs.n}, {"betas", cs.betas}}},
             {"term_count", s.term_count()},
             {"terms", to_json(s)}};

    int rc = 0;
    std::string cache = resolve_cache_dir(g);
    if (!cache.empty()) {
        std::ostringstream key;
        key << "series_" << cs.n;
        for (auto b : cs.betas) key << "_" << b;
        fs::path file = fs::path(cache) / (key.str() + ".json");
        if (check && fs::exists(file)) {
            Json cached = Json::parse(std::ifstream(file));
            if (cached != doc) {
                std::cerr << "cached series differs from fresh expansion:\n"
                          << "  cached: " << cached["terms"].dump() << "\n"
                          << "  fresh:  " << doc["terms"].dump() << "\n";
                rc = 1;
            }
        } else {
            fs::create_directories(cache);
            std::ofstream(file) << doc.dump(2) << "\n";
        }
    }
    if (check && rc == 0 && cs.betas.size() == 2) {
        auto cc = parse_class(g);
        if (s.term_count() != milnor_number(cc)) rc = 1;
        if (!s.nonnegative()) rc = 1;
    }
    emit(
        g, doc,
        [&](std::ostream& os) {
            os << "series with " << s.term_count() << " terms:\n";
            for (const auto& [e, c] : s.terms)
                os << "  t^(" << e.str() << ") * " << c << "\n";
        },
        [&](std::ostream& os) {
            os << "num,den,coeff\n";
            for (const auto& [e, c] : s.terms)
                os << e.num() << "," << e.den() << "," << c << "\n";
        });
    return rc;
}

// ---------------------------------------------------------------------- //

int cmd_candidates(const GlobalOpts& g, bool check) {
    auto cc = parse_class(g);
    auto A1 = build_A1(cc);
    auto A2 = build_A2(cc);
    Json doc{{"A1", to_json(A1)}, {"A2", to_json(A2)},
             {"counts",
              Json{{"A1", (long long)A1.size()}, {"A2", (long long)A2.size()},
                   {"mu", milnor_number(cc)}}}};
    int rc = 0;
    if (check) {
        auto srep = structural_checks(cc, A1, A2);
        doc["structural_checks"] =
            Json{{"passed", srep.passed},
                 {"disjointness", srep.disjoint_applicable ? "checked" : "not applicable"},
                 {"failures", srep.failures}};
        if (!srep.passed) rc = 1;
        if (cc.distinct_eigenvalues) {
            auto s = expand_generating_series(characteristic_sequence(cc));
            auto crep = compare_with_series(A1, A2, s);
            Json mism = Json::array();
            for (const auto& e : crep.only_in_series)
                mism.push_back(Json{{"only_in_series", to_json(e)}});
            for (const auto& e : crep.only_in_candidates)
                mism.push_back(Json{{"only_in_candidates", to_json(e)}});
            doc["series_comparison"] = Json{{"equal", crep.equal}, {"mismatches", mism}};
            if (!crep.equal) rc = 1;
        }
    }
    emit(
        g, doc,
        [&](std::ostream& os) {
            os << "|A1| = " << A1.size() << ", |A2| = " << A2.size()
               << ", mu = " << milnor_number(cc) << "\n";
            for (const auto& c : A1)
                os << "  " << family_name(c.family) << "  " << c.value.str() << "\n";
            for (const auto& c : A2)
                os << "  " << family_name(c.family) << "  " << c.value.str() << "\n";
            if (rc) os << "CHECK FAILED\n";
        },
        [&](std::ostream& os) {
            os << "family,num,den,k\n";
            for (const auto& c : A1)
                os << family_name(c.family) << "," << c.value.num() << ","
                   << c.value.den() << "," << c.k << "\n";
            for (const auto& c : A2)
                os << family_name(c.family) << "," << c.value.num() << ","
                   << c.value.den() << "," << c.k << "\n";
        });
    return rc;
}

// ---------------------------------------------------------------------- //

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(std::stoll(s));
    return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

int cmd_verify(const GlobalOpts& g, const std::string& family, const std::string& root_sel,
               double tol) {
    auto cc = parse_class(g);
    if (!cc.distinct_eigenvalues)
        throw RangeViolation("verify requires distinct monodromy eigenvalues");

    std::vector<CandidateRoot> targets;
    auto A1 = build_A1(cc);
    auto A2 = build_A2(cc);
    auto want = [&](Family f) {
        return family == "all" || family == family_name(f);
    };
    for (const auto& c : A1)
        if (want(c.family)) targets.push_back(c);
    for (const auto& c : A2)
        if (want(c.family)) targets.push_back(c);
    if (!root_sel.empty()) {
        Rat r = parse_rat(root_sel);
        std::vector<CandidateRoot> filt;
        for (const auto& c : targets)
            if (c.value == r || c.value == -r) filt.push_back(c);
        targets = std::move(filt);
        if (targets.empty()) throw RangeViolation("verify: root " + root_sel + " not found");
    }
    if (targets.empty()) {
        Json doc{{"note", "empty family " + family}, {"reports", Json::array()}};
        emit(g, doc, [&](std::ostream& os) { os << "empty family " << family << "\n"; },
             [&](std::ostream& os) { os << "family,alpha,empty\n"; });
        return 0;
    }

    // positivity of the models drives exit code 3
    PlusModel plus;
    MinusModel minus;
    bool need_plus = false, need_minus = false;
    for (const auto& c : targets) {
        if (c.family == Family::A11 || c.family == Family::A12) need_plus = true;
        else need_minus = true;
    }
    if (need_plus) {
        plus = build_plus(cc);
        auto rep = check_positivity(plus);
        if (rep.inconclusive) {
            std::cerr << "positivity inconclusive for the plus model\n";
            return 3;
        }
        if (!rep.positive) {
            std::cerr << "plus model not positive at (" << rep.witness_x << ","
                      << rep.witness_y << ")\n";
            return 2;
        }
    }
    if (need_minus) {
        minus = build_minus(cc);
        auto rep = check_positivity(minus);
        if (rep.inconclusive) {
            std::cerr << "positivity inconclusive for the minus model\n";
            return 3;
        }
        if (!rep.positive) {
            std::cerr << "minus model not positive at (" << rep.witness_x << ","
                      << rep.witness_y << ")\n";
            return 2;
        }
    }

    const std::string cache = resolve_cache_dir(g);
    const std::string fp = config_fingerprint(g.quad);
    Json reports = Json::array();
    int rc = 0;
    for (const auto& c : targets) {
        std::ostringstream key;
        key << "verify_" << cc.n1 << "_" << cc.m << "_" << cc.n2 << "_" << cc.q << "_"
            << family_name(c.family) << "_" << -c.value.num() << "_" << c.value.den()
            << "_" << fp;
        fs::path file = cache.empty() ? fs::path() : fs::path(cache) / (key.str() + ".json");
        Json rep_json;
        if (!cache.empty() && fs::exists(file)) {
            rep_json = Json::parse(std::ifstream(file));
        } else {
            ResidueReport rep;
            switch (c.family) {
                case Family::A11: rep = g.quad.precision_bits > 64
                                            ? verify_A11<Quad>(plus, c, g.quad)
                                            : verify_A11<long double>(plus, c, g.quad);
                    break;
                case Family::A12: rep = g.quad.precision_bits > 64
                                            ? verify_A12_slope<Quad>(plus, c, g.quad)
                                            : verify_A12_slope<long double>(plus, c, g.quad);
                    break;
                case Family::A21: rep = g.quad.precision_bits > 64
                                            ? verify_A21<Quad>(minus, c, g.quad)
                                            : verify_A21<long double>(minus, c, g.quad);
                    break;
                case Family::A22: rep = g.quad.precision_bits > 64
                                            ? verify_A22_slope<Quad>(minus, c, g.quad)
                                            : verify_A22_slope<long double>(minus, c, g.quad);
                    break;
            }
            rep_json = to_json(rep);
            if (!cache.empty()) {
                fs::create_directories(cache);
                std::ofstream(file) << rep_json.dump(2) << "\n";
            }
        }
        if (rep_json["rel_error"].get<double>() > tol) rc = 1;
        reports.push_back(rep_json);
    }
    Json doc{{"class", Json{{"n1", cc.n1}, {"m", cc.m}, {"n2", cc.n2}, {"q", cc.q}}},
             {"tolerance", tol},
             {"reports", reports}};
    emit(
        g, doc,
        [&](std::ostream& os) {
            for (const auto& r : reports) {
                os << r["family"].get<std::string>() << " alpha=-"
                   << -r["alpha"]["num"].get<long long>() << "/"
                   << r["alpha"]["den"].get<long long>()
                   << " measured=" << r["measured"].get<double>()
                   << " closed=" << r["closed_form"].get<double>()
                   << " rel=" << r["rel_error"].get<double>()
                   << " matched: " << r["matched"].get<std::string>() << "\n";
            }
            os << (rc == 0 ? "ALL WITHIN TOLERANCE" : "TOLERANCE EXCEEDED") << "\n";
        },
        [&](std::ostream& os) {
            os << "family,alpha_num,alpha_den,measured,closed_form,rel_error,matched\n";
            for (const auto& r : reports)
                os << r["family"].get<std::string>() << ","
                   << r["alpha"]["num"].get<long long>() << ","
                   << r["alpha"]["den"].get<long long>() << ","
                   << r["measured"].get<double>() << "," << r["closed_form"].get<double>()
                   << "," << r["rel_error"].get<double>() << ","
                   << csv_escape(r["matched"].get<std::string>()) << "\n";
        });
    return rc;
}

// ---------------------------------------------------------------------- //

int cmd_sweep(const GlobalOpts& g, long long max_m, long long max_n2, long long max_q,
              int jobs) {
    (void)g;   // sweep output is the plain summary table in every format
    struct Entry { long long n1, m, n2, q; };
    std::vector<Entry> classes;
    for (long long m = 3; m <= max_m; ++m)
        for (long long n1 = 2; n1 < m; ++n1) {
            if (std::gcd(m, n1) != 1) continue;
            for (long long n2 = 2; n2 <= max_n2; ++n2)
                for (long long q = 1; q <= max_q; ++q) {
                    if (std::gcd(q, n2) != 1) continue;
                    classes.push_back({n1, m, n2, q});
                }
        }
    std::vector<std::string> lines(classes.size());
    std::vector<char> ok(classes.size(), 1);
    auto work = [&](size_t begin, size_t end) {
        for (size_t idx = begin; idx < end; ++idx) {
            const auto& e = classes[idx];
            auto cc = validate_class(e.n1, e.m, e.n2, e.q);
            std::ostringstream os;
            os << "(" << e.n1 << "," << e.m << "," << e.n2 << "," << e.q << ") ";
            auto s = expand_generating_series(characteristic_sequence(cc));
            bool good = s.term_count() == milnor_number(cc) && s.nonnegative();
            if (!cc.distinct_eigenvalues) {
                os << (good ? "skipped (multiple eigenvalues)" : "FAIL count");
                lines[idx] = os.str();
                ok[idx] = good;
                continue;
            }
            auto A1 = build_A1(cc);
            auto A2 = build_A2(cc);
            good = good && (long long)(A1.size() + A2.size()) == milnor_number(cc);
            good = good && structural_checks(cc, A1, A2).passed;
            good = good && compare_with_series(A1, A2, s).equal;
            for (const auto& [ex, c] : s.terms) good = good && c == 1;
            os << (good ? "ok" : "FAIL") << " mu=" << milnor_number(cc);
            lines[idx] = os.str();
            ok[idx] = good;
        }
    };
    if (jobs <= 1) {
        work(0, classes.size());
    } else {
        std::vector<std::thread> pool;
        size_t chunk = (classes.size() + (size_t)jobs - 1) / (size_t)jobs;
        for (int t = 0; t < jobs; ++t) {
            size_t b = (size_t)t * chunk, e = std::min(classes.size(), b + chunk);
            if (b >= e) break;
            pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }
    bool all = true;
    for (size_t i = 0; i < classes.size(); ++i) {
        std::cout << lines[i] << "\n";
        all = all && ok[i];
    }
    std::cout << (all ? "SWEEP PASS" : "SWEEP FAIL") << " (" << classes.size()
              << " classes)\n";
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"plane-branch candidate roots and residue certification"};
    app.require_subcommand(1);

    GlobalOpts g;
    std::string family = "all", root_sel;
    double tol = 1e-6;
    long long max_m = 9, max_n2 = 5, max_q = 9;
    int jobs = 1;

    // config file first, so it only supplies defaults
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                load_config_defaults(argv[i + 1], g, family, root_sel, tol, max_m,
                                     max_n2, max_q, jobs);
            } catch (const std::exception& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return 2;
            }
        }
    }
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file mirroring flags");

    auto add_class_opts = [&](CLI::App* cmd, bool) {
        cmd->add_option("--n1", g.n1, "first characteristic parameter");
        cmd->add_option("--m", g.m, "second characteristic parameter");
        cmd->add_option("--n2", g.n2, "second-pair index");
        cmd->add_option("--q", g.q, "second-pair offset");
    };
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file mirroring flags");
        cmd->add_option("--format", g.format, "json|csv|text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        cmd->add_option("--cache-dir", g.cache_dir, "cache directory");
        cmd->add_flag("--no-cache", g.no_cache, "disable the result cache");
        cmd->add_option("--seed", g.seed, "reserved (numerics are deterministic)");
        cmd->add_option("--abs-tol", g.quad.abs_tol, "quadrature absolute tolerance");
        cmd->add_option("--rel-tol", g.quad.rel_tol, "quadrature relative tolerance");
        cmd->add_option("--max-subdiv", g.quad.max_subdivisions, "subdivision budget");
        cmd->add_option("--prec-bits", g.quad.precision_bits,
                        "float precision bits (<=64: long double, else quad)");
        cmd->add_option("--taylor-bump", g.quad.taylor_bump, "raise Taylor split orders");
    };

    auto* inv = app.add_subcommand("invariants", "characteristic data, mu, semigroup");
    add_class_opts(inv, true);
    add_common(inv);

    bool series_check = false;
    auto* ser = app.add_subcommand("series", "expand the generating series");
    add_class_opts(ser, false);
    add_common(ser);
    ser->add_flag("--check", series_check, "verify identities / cached copy");

    bool cand_check = false;
    auto* cand = app.add_subcommand("candidates", "candidate sets with witnesses");
    add_class_opts(cand, true);
    add_common(cand);
    cand->add_flag("--check", cand_check, "structural checks + series comparison");

    auto* ver = app.add_subcommand("verify", "numeric residue certification");
    add_class_opts(ver, true);
    add_common(ver);
    ver->add_option("--family", family, "A11|A12|A21|A22|all")
        ->check(CLI::IsMember({"A11", "A12", "A21", "A22", "all"}));
    ver->add_option("--root", root_sel, "single root, e.g. -5/12");
    ver->add_option("--tol", tol, "relative-error threshold for exit status");

    auto* sw = app.add_subcommand("sweep", "combinatorial identity sweep");
    add_common(sw);
    sw->add_option("--max-m", max_m, "upper bound for m");
    sw->add_option("--max-n2", max_n2, "upper bound for n2");
    sw->add_option("--max-q", max_q, "upper bound for q");
    sw->add_option("--jobs", jobs, "worker threads (deterministic output)");

    try {
        app.parse(argc, argv);
        if (inv->parsed()) return cmd_invariants(g);
        if (ser->parsed()) return cmd_series(g, series_check);
        if (cand->parsed()) return cmd_candidates(g, cand_check);
        if (ver->parsed()) return cmd_verify(g, family, root_sel, tol);
        if (sw->parsed()) return cmd_sweep(g, max_m, max_n2, max_q, jobs);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const RangeViolation& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const GcdViolation& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const Inconclusive& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
