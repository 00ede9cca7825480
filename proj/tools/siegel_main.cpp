#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "siegel/laurent.hpp"
#include "siegel/serialize.hpp"

using namespace siegel;

namespace {

constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& path, const json& j) {
    std::string text = j.dump(2);
    text += "\n";
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << text;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

struct GenOptions {
    std::string mode = "siegel";
    int m = 0;
    std::string k_csv;
    std::string d_csv;
    int r = 0;
    std::string field = "qt";
    std::uint64_t seed = 0;
    long coeff_bound = 5;
    int deg_bound = 1;
    int den_percent = 25;
    int retries = 64;

    RandomValueOptions value_options() const {
        RandomValueOptions o;
        o.coeff_bound = coeff_bound;
        o.num_degree = deg_bound;
        o.den_degree = deg_bound;
        o.den_percent = den_percent;
        return o;
    }
};

SiegelObject gen_siegel(const GenOptions& g, Rng& rng) {
    FieldPtr F = parse_field_shorthand(g.field);
    std::vector<int> k;
    if (!g.k_csv.empty()) {
        k = parse_int_list(g.k_csv);
        if (static_cast<int>(k.size()) != g.m + 1)
            throw ParseError("--k must list m+1 segment sizes");
    } else {
        if (g.r <= 0) throw ParseError("--mode siegel needs --k or --r");
        k = random_shape(rng, g.m, g.r);
    }
    return random_siegel(rng, F, g.m, k, g.value_options());
}

LatticeInstance gen_lattice(const GenOptions& g, Rng& rng) {
    FieldPtr F = parse_field_shorthand(g.field);
    if (g.d_csv.empty()) throw ParseError("--mode lattice needs --d");
    std::vector<int> d = parse_int_list(g.d_csv);
    int r = g.r > 0 ? g.r : static_cast<int>(d.size());
    if (r < static_cast<int>(d.size())) throw ParseError("--r smaller than the partition length");
    d.resize(static_cast<size_t>(r), 0);
    int m = g.m > 0 ? g.m : (d.empty() ? 1 : d.front());
    JordanData jd = jordan_data(PartitionWithZeroes(d), m);
    return random_lattice_instance(rng, F, jd, g.value_options(), g.retries);
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    int trial = 0;
    std::string status;  // pass / fail / skipped
    double ms = 0;
    json counterexample;
};

struct VerifyConfig {
    GenOptions gen;
    int trials = 10;
    int jobs = 1;
    std::vector<std::string> checks;  // empty = all applicable
    bool lattice_mode() const { return !gen.d_csv.empty(); }

    bool enabled(const std::string& name) const {
        return checks.empty() || std::find(checks.begin(), checks.end(), name) != checks.end();
    }
};

void run_siegel_checks(const VerifyConfig& cfg, const SiegelObject& S, int trial,
                       std::vector<CheckResult>& out) {
    auto timed = [&](const std::string& name, auto&& body) {
        if (!cfg.enabled(name)) return;
        CheckResult res;
        res.name = name;
        res.trial = trial;
        auto t0 = std::chrono::steady_clock::now();
        std::string detail = body();
        res.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                     .count();
        res.status = detail.empty() ? "pass" : "fail";
        if (!detail.empty()) {
            res.counterexample["detail"] = detail;
            res.counterexample["instance"] = siegel_to_json(S);
        }
        out.push_back(std::move(res));
    };

    timed("recurrence", [&] {
        auto rep = verify_recurrence(S);
        if (rep.ok) return std::string();
        auto& t = *rep.failing_tuple;
        return "recurrence fails at (i,j,psi,xi)=(" + std::to_string(t[0]) + "," +
               std::to_string(t[1]) + "," + std::to_string(t[2]) + "," + std::to_string(t[3]) +
               ")";
    });
    timed("bbbar", [&] {
        auto rep = verify_BBbar(S);
        if (rep.ok) return std::string();
        return "B^t Bbar has a wrong coefficient at degree " +
               std::to_string(rep.bad_degrees.front());
    });
    timed("recover", [&] {
        return recover_Bbar(build_B(S), S.k()) == build_Bbar(S)
                   ? std::string()
                   : std::string("recovered Bbar differs from the direct construction");
    });
    timed("gothic", [&] {
        Mat GS = build_gothic_S(S);
        Mat GP = build_gothic_P(S);
        Mat I = Mat::identity(S.field(), S.r());
        return (GP * GS == I && GS * GP == I) ? std::string()
                                              : std::string("gothic product is not the identity");
    });
    timed("pairing", [&] {
        auto rep = verify_pairing(S);
        if (rep.identity_ok) return std::string();
        auto [a, b] = *rep.failing_pair;
        return "pairing (" + std::to_string(a) + "," + std::to_string(b) + ") = " +
               poly_to_string(*rep.failing_value, "N");
    });
    timed("dualdual", [&] {
        return dual_siegel(dual_siegel(S)) == S
                   ? std::string()
                   : std::string("double dual differs from the original");
    });
}

void run_lattice_checks(const VerifyConfig& cfg, const LatticeInstance& L, int trial,
                        std::vector<CheckResult>& out) {
    using Outcome = std::pair<std::string, std::string>;  // (detail, status)
    auto timed = [&](const std::string& name, auto&& body) {
        if (!cfg.enabled(name)) return;
        CheckResult res;
        res.name = name;
        res.trial = trial;
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        std::string status = "pass";
        try {
            Outcome outcome = body();
            detail = outcome.first;
            status = outcome.second;
        } catch (const Error& e) {
            detail = e.what();
            status = "fail";
        }
        res.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                     .count();
        res.status = status;
        if (status == "fail") {
            res.counterexample["detail"] = detail;
            res.counterexample["instance"] = instance_to_json(L);
        }
        out.push_back(std::move(res));
    };

    ArrangedBasis A = arrange_segments(L);
    SiegelObject S = extract_siegel(L, A);

    timed("omega", [&]() -> Outcome {
        auto rep = verify_omega_basis(L, A, S);
        if (rep.kernel_ok && rep.spanning_ok) return {"", "pass"};
        return {rep.kernel_ok ? "omega set does not span the kernel" : "omega outside the kernel",
                "fail"};
    });
    timed("roundtrip", [&]() -> Outcome {
        auto rep = roundtrip_dual(L);
        switch (rep.status) {
            case RoundtripStatus::Match:
                return {"", "pass"};
            case RoundtripStatus::Inadmissible:
                return {"", "skipped"};
            case RoundtripStatus::Mismatch: {
                auto& t = *rep.failing_entry;
                return {"dual extraction differs at (" + std::to_string(t.u) + "," +
                            std::to_string(t.y) + "," + std::to_string(t.z) + ")",
                        "fail"};
            }
        }
        return {"unreachable", "fail"};
    });

    run_siegel_checks(cfg, S, trial, out);
}

int cmd_verify(const VerifyConfig& cfg, const std::string& out_path) {
    std::vector<std::vector<CheckResult>> per_trial(static_cast<size_t>(cfg.trials));
    std::vector<std::string> trial_errors(static_cast<size_t>(cfg.trials));
    std::atomic<int> next{0};
    auto worker = [&] {
        while (true) {
            int t = next.fetch_add(1);
            if (t >= cfg.trials) break;
            Rng rng = Rng(cfg.gen.seed).fork(static_cast<std::uint64_t>(t));
            try {
                if (cfg.lattice_mode()) {
                    LatticeInstance L = gen_lattice(cfg.gen, rng);
                    run_lattice_checks(cfg, L, t, per_trial[static_cast<size_t>(t)]);
                } else {
                    SiegelObject S = gen_siegel(cfg.gen, rng);
                    run_siegel_checks(cfg, S, t, per_trial[static_cast<size_t>(t)]);
                }
            } catch (const Error& e) {
                trial_errors[static_cast<size_t>(t)] = e.what();
            }
        }
    };
    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    json checks = json::array();
    long pass = 0, fail = 0, skipped = 0;
    for (int t = 0; t < cfg.trials; ++t) {
        if (!trial_errors[static_cast<size_t>(t)].empty()) {
            json c;
            c["name"] = "generate";
            c["trial"] = t;
            c["status"] = "fail";
            c["detail"] = trial_errors[static_cast<size_t>(t)];
            checks.push_back(c);
            ++fail;
            continue;
        }
        for (const auto& res : per_trial[static_cast<size_t>(t)]) {
            json c;
            c["name"] = res.name;
            c["trial"] = res.trial;
            c["status"] = res.status;
            c["ms"] = res.ms;
            if (!res.counterexample.is_null()) c["counterexample"] = res.counterexample;
            checks.push_back(c);
            if (res.status == "pass")
                ++pass;
            else if (res.status == "fail")
                ++fail;
            else
                ++skipped;
        }
    }
    json report;
    report["type"] = "report";
    report["checks"] = checks;
    report["summary"] = {{"pass", pass}, {"fail", fail}, {"skipped", skipped}};
    report["overall"] = fail == 0 ? "pass" : "fail";
    write_output(out_path, report);
    return fail == 0 ? 0 : kExitMathFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Siegel objects of lattices with a nilpotent twist"};
    app.require_subcommand(1);

    GenOptions gen;
    std::string in_path, out_path;
    int order = 3;
    std::string expr;
    VerifyConfig vcfg;

    auto add_gen_flags = [&](CLI::App* cmd, GenOptions& g) {
        cmd->add_option("--mode", g.mode)->check(CLI::IsMember({"siegel", "lattice"}));
        cmd->add_option("--m", g.m);
        cmd->add_option("--k", g.k_csv);
        cmd->add_option("--d", g.d_csv);
        cmd->add_option("--r", g.r);
        cmd->add_option("--field", g.field);
        cmd->add_option("--seed", g.seed);
        cmd->add_option("--coeff-bound", g.coeff_bound);
        cmd->add_option("--deg-bound", g.deg_bound);
        cmd->add_option("--den-percent", g.den_percent);
        cmd->add_option("--retries", g.retries);
    };

    CLI::App* cmd_gen =
        app.add_subcommand("gen", "generate a random Siegel object or lattice instance");
    add_gen_flags(cmd_gen, gen);
    cmd_gen->add_option("--out", out_path);

    CLI::App* cmd_extract =
        app.add_subcommand("extract", "extract the Siegel object of a lattice instance");
    cmd_extract->add_option("--in", in_path);
    cmd_extract->add_option("--out", out_path);

    CLI::App* cmd_p =
        app.add_subcommand("p", "compute the P table of an instance or Siegel object");
    cmd_p->add_option("--in", in_path);
    cmd_p->add_option("--out", out_path);

    CLI::App* cmd_dualize = app.add_subcommand("dualize", "dual Siegel object");
    cmd_dualize->add_option("--in", in_path);
    cmd_dualize->add_option("--out", out_path);

    CLI::App* cmd_expand =
        app.add_subcommand("expand", "theta-shift expansion of a rational function of T");
    cmd_expand->add_option("--f", expr)->required();
    cmd_expand->add_option("--order", order);
    cmd_expand->add_option("--field", gen.field);
    cmd_expand->add_option("--out", out_path);

    CLI::App* cmd_verify_app =
        app.add_subcommand("verify", "run the identity suite on random instances");
    add_gen_flags(cmd_verify_app, vcfg.gen);
    cmd_verify_app->add_option("--trials", vcfg.trials);
    cmd_verify_app->add_option("--jobs", vcfg.jobs);
    cmd_verify_app->add_option("--checks", vcfg.checks)->delimiter(',');
    cmd_verify_app->add_option("--out", out_path);

    CLI::App* cmd_roundtrip =
        app.add_subcommand("roundtrip", "dual-lattice round trip on an instance");
    cmd_roundtrip->add_option("--in", in_path);
    add_gen_flags(cmd_roundtrip, gen);
    cmd_roundtrip->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (cmd_gen->parsed()) {
            Rng rng(gen.seed);
            if (gen.mode == "siegel") {
                if (gen.m < 1) throw ParseError("--m is required");
                write_output(out_path, siegel_to_json(gen_siegel(gen, rng)));
            } else {
                write_output(out_path, instance_to_json(gen_lattice(gen, rng)));
            }
            return 0;
        }
        if (cmd_extract->parsed()) {
            LatticeInstance L = instance_from_json(json::parse(read_input(in_path)));
            ArrangedBasis A = arrange_segments(L);
            write_output(out_path, siegel_to_json(extract_siegel(L, A)));
            return 0;
        }
        if (cmd_p->parsed()) {
            json j = json::parse(read_input(in_path));
            std::string type = j.value("type", "siegel");
            SiegelObject S = [&] {
                if (type == "lattice") {
                    LatticeInstance L = instance_from_json(j);
                    return extract_siegel(L, arrange_segments(L));
                }
                return siegel_from_json(j);
            }();
            write_output(out_path, ptable_to_json(compute_P(S)));
            return 0;
        }
        if (cmd_dualize->parsed()) {
            SiegelObject S = siegel_from_json(json::parse(read_input(in_path)));
            write_output(out_path, siegel_to_json(dual_siegel(S), "dual_siegel"));
            return 0;
        }
        if (cmd_expand->parsed()) {
            FieldPtr K = parse_field_shorthand(gen.field);
            if (K->kind != FieldKind::RatFunc)
                throw ParseError("--field must contain theta (for example qt or q5t)");
            FieldPtr KT = FieldSpec::ratfunc(K, "T");
            FieldValue f = parse_value(KT, expr);
            write_output(out_path, laurent_to_json(theta_shift(f, order)));
            return 0;
        }
        if (cmd_verify_app->parsed()) {
            if (vcfg.gen.m < 1 && vcfg.gen.d_csv.empty()) throw ParseError("--m is required");
            if (vcfg.trials < 1) throw ParseError("--trials must be >= 1");
            return cmd_verify(vcfg, out_path);
        }
        if (cmd_roundtrip->parsed()) {
            LatticeInstance L = [&] {
                if (!in_path.empty()) return instance_from_json(json::parse(read_input(in_path)));
                Rng rng(gen.seed);
                gen.mode = "lattice";
                return gen_lattice(gen, rng);
            }();
            RoundtripReport rep = roundtrip_dual(L);
            json j;
            j["type"] = "roundtrip_report";
            j["status"] = rep.status == RoundtripStatus::Match          ? "match"
                          : rep.status == RoundtripStatus::Inadmissible ? "inadmissible"
                                                                        : "mismatch";
            if (rep.failing_entry) {
                j["failing_entry"] = {rep.failing_entry->u, rep.failing_entry->y,
                                      rep.failing_entry->z};
                j["expected"] = mat_to_json(*rep.expected);
                j["actual"] = mat_to_json(*rep.actual);
            }
            write_output(out_path, j);
            return rep.status == RoundtripStatus::Mismatch ? kExitMathFailure : 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: bad JSON input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathFailure;
    }
    return kExitUsage;
}
