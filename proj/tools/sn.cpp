// Command-line surface for the smooth-neighbor toolkit.
//
// Exit codes: 0 success, 1 verification failure, 2 limit tripped (partial
// result written), 3 I/O error, 4 factorization gave up where certainty was
// required.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sn/analysis.hpp"
#include "sn/arith.hpp"
#include "sn/certify.hpp"
#include "sn/closure.hpp"
#include "sn/diophantine.hpp"
#include "sn/member_file.hpp"

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitPartial = 2;
constexpr int kExitIo = 3;
constexpr int kExitGaveUp = 4;

std::vector<sn::Nat> parse_seed_spec(const std::string& spec) {
    auto dots = spec.find("..");
    if (dots == std::string::npos)
        throw CLI::ValidationError("--seed", "expected a range like 1..41");
    sn::Nat lo = sn::parse_nat(spec.substr(0, dots));
    sn::Nat hi = sn::parse_nat(spec.substr(dots + 2));
    if (lo < 1 || hi < lo) throw CLI::ValidationError("--seed", "bad range " + spec);
    std::vector<sn::Nat> seed;
    for (sn::Nat v = lo; v <= hi; ++v) seed.push_back(v);
    return seed;
}

struct ClosureArgs {
    std::string seed_spec;
    std::string seed_file;
    std::string out_path;
    std::string checkpoint_path;
    bool resume = false;
    uint64_t k = 1;
    uint64_t z = 0;
    int workers = 0;
    std::optional<uint64_t> max_rounds;
    std::optional<uint64_t> max_members;
    std::optional<double> wall_time;
};

int run_closure(const ClosureArgs& a) {
    std::optional<sn::ClosureEngine> engine;
    if (a.resume) {
        if (a.checkpoint_path.empty()) {
            std::cerr << "--resume requires --checkpoint\n";
            return kExitIo;
        }
        std::ifstream in(a.checkpoint_path);
        if (!in) {
            std::cerr << "cannot open checkpoint " << a.checkpoint_path << "\n";
            return kExitIo;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        engine = sn::ClosureEngine::from_checkpoint_json(ss.str());
        std::cout << "resumed at round " << engine->round_index() << " with "
                  << engine->members().size() << " members\n";
    } else {
        std::vector<sn::Nat> seed;
        uint64_t z = a.z;
        if (!a.seed_file.empty()) {
            seed = sn::read_member_file(a.seed_file).members;
        } else if (!a.seed_spec.empty()) {
            seed = parse_seed_spec(a.seed_spec);
            if (z == 0 && seed.front() == 1 && sn::is_prime_u64(seed.back().get_ui()))
                z = seed.back().get_ui();  // the z_p convention
        } else {
            std::cerr << "need --seed or --seed-file\n";
            return kExitIo;
        }
        engine.emplace(seed, sn::Nat(static_cast<unsigned long>(a.k)), z);
    }

    auto start = std::chrono::steady_clock::now();
    bool complete = true;
    while (!engine->at_fixpoint()) {
        if (a.max_rounds && engine->round_index() >= *a.max_rounds) { complete = false; break; }
        if (a.max_members && engine->members().size() >= *a.max_members) { complete = false; break; }
        if (a.wall_time) {
            double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (el >= *a.wall_time) { complete = false; break; }
        }
        size_t fresh = engine->step(a.workers);
        std::cout << "round " << engine->round_index() << ": +" << fresh << " ("
                  << engine->members().size() << " members)\n";
        if (!a.checkpoint_path.empty()) {
            std::ofstream out(a.checkpoint_path);
            if (!out) {
                std::cerr << "cannot write checkpoint " << a.checkpoint_path << "\n";
                return kExitIo;
            }
            out << engine->to_checkpoint_json() << "\n";
        }
    }

    if (!a.out_path.empty()) {
        sn::MemberFile f;
        f.k = engine->k();
        f.z = engine->z();
        f.complete = complete;
        f.members = engine->members();
        try {
            sn::write_member_file(f, a.out_path);
        } catch (const std::exception& e) {
            std::cerr << e.what() << "\n";
            return kExitIo;
        }
    }
    std::cout << (complete ? "fixpoint" : "partial (limit reached)") << ": "
              << engine->members().size() << " members\n";
    return complete ? 0 : kExitPartial;
}

int run_verify(const std::string& path, uint64_t z_override) {
    sn::MemberFile f = sn::read_member_file(path);
    uint64_t z = z_override ? z_override : f.z;
    if (z < 2) {
        std::cerr << "no smoothness bound: pass --z or use a file with a z header\n";
        return kExitIo;
    }
    if (f.k != 1 && f.k != 2) {
        std::cerr << "verify supports k=1 and k=2 files\n";
        return kExitIo;
    }
    sn::SmoothBound bound(z);
    size_t bad = 0;
    for (const sn::Nat& m : f.members) {
        if (!sn::is_smooth(m * (m + f.k), bound)) {
            std::cout << "FAIL " << sn::to_string(m) << "\n";
            ++bad;
        }
    }
    std::cout << f.members.size() - bad << "/" << f.members.size() << " members verified "
              << z << "-smooth\n";
    return bad == 0 ? 0 : kExitVerifyFail;
}

sn::BaseSets collect_bases(const std::vector<std::string>& base_specs,
                           const std::vector<std::string>& smooth_specs) {
    sn::BaseSets bases;
    for (const auto& spec : base_specs) {
        auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--base", "expected id=path, got " + spec);
        auto set = std::make_shared<sn::NeighborSet>(
            sn::read_member_file(spec.substr(eq + 1)).to_set());
        bases.emplace(spec.substr(0, eq), std::move(set));
    }
    for (const auto& spec : smooth_specs) {
        auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--smooth-base", "expected id=z, got " + spec);
        bases.emplace(spec.substr(0, eq),
                      sn::SmoothnessBase{std::stoull(spec.substr(eq + 1))});
    }
    return bases;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"smooth-neighbor closure, certificates and analyses"};
    app.require_subcommand(1);

    // closure
    ClosureArgs ca;
    auto* closure = app.add_subcommand("closure", "compute a delta fixpoint");
    closure->add_option("--seed", ca.seed_spec, "seed range, e.g. 1..41");
    closure->add_option("--seed-file", ca.seed_file, "member file to seed from");
    closure->add_option("--k", ca.k, "neighbor difference (default 1)");
    closure->add_option("--z", ca.z, "declared smoothness bound for the output header");
    closure->add_option("--out", ca.out_path, "member file to write");
    closure->add_option("--checkpoint", ca.checkpoint_path, "checkpoint JSON path");
    closure->add_flag("--resume", ca.resume, "resume from --checkpoint");
    closure->add_option("--workers", ca.workers, "worker threads (default: all cores)");
    closure->add_option("--max-rounds", ca.max_rounds, "stop after this many rounds");
    closure->add_option("--max-members", ca.max_members, "stop once this many members exist");
    closure->add_option("--wall-time", ca.wall_time, "stop after this many seconds");

    // closure2: even difference from a k=1 base
    std::string c2_base, c2_out;
    int c2_workers = 0;
    auto* closure2 = app.add_subcommand(
        "closure2", "difference-2 neighbors generated from a difference-1 member file");
    closure2->add_option("--base-file", c2_base, "k=1 member file")->required();
    closure2->add_option("--out", c2_out, "member file to write");
    closure2->add_option("--workers", c2_workers, "worker threads");

    // verify
    std::string v_file;
    uint64_t v_z = 0;
    auto* verify = app.add_subcommand("verify", "re-check every member's smoothness");
    verify->add_option("file", v_file, "member file")->required();
    verify->add_option("--z", v_z, "override the file's bound");

    // certify
    std::string cert_beta, cert_base_file, cert_base_id = "base", cert_out;
    unsigned cert_depth = 16;
    auto* certify = app.add_subcommand("certify", "build a decomposition certificate");
    certify->add_option("--beta", cert_beta, "target value")->required();
    certify->add_option("--base-file", cert_base_file, "member file of attested values")->required();
    certify->add_option("--base-id", cert_base_id, "base-set name recorded in the certificate");
    certify->add_option("--depth", cert_depth, "search depth limit");
    certify->add_option("--out", cert_out, "certificate JSON to write");

    // check-cert
    std::string cc_cert;
    std::vector<std::string> cc_bases, cc_smooth;
    bool cc_quiet = false;
    auto* check = app.add_subcommand("check-cert", "verify a certificate");
    check->add_option("cert", cc_cert, "certificate JSON")->required();
    check->add_option("--base", cc_bases, "id=member-file, repeatable");
    check->add_option("--smooth-base", cc_smooth,
                      "id=z, attest membership by z-smoothness of m(m+1)");
    check->add_flag("--quiet", cc_quiet, "print only the verdict");

    // beta-pairs
    std::string bp_beta, bp_mode = "list", bp_out;
    uint64_t bp_cap = 1'000'003;
    int bp_workers = 0;
    auto* beta_pairs = app.add_subcommand("beta-pairs", "parent pairs of a given beta");
    beta_pairs->add_option("--beta", bp_beta, "target value")->required();
    beta_pairs->add_option("--mode", bp_mode, "list | min-prime")
        ->check(CLI::IsMember({"list", "min-prime"}));
    beta_pairs->add_option("--prime-cap", bp_cap, "smoothness cap for min-prime (prime)");
    beta_pairs->add_option("--workers", bp_workers, "worker threads");
    beta_pairs->add_option("--out", bp_out, "CSV path for list mode");

    // analyze
    std::string an_kind, an_file, an_old, an_new, an_out = "-";
    std::vector<std::string> an_files;
    std::string an_a, an_b, an_c;
    unsigned an_bins = 50, an_hmax = 7;
    uint64_t an_limit = 100000;
    auto* analyze = app.add_subcommand("analyze", "reporting computations, CSV output");
    analyze->add_option("kind", an_kind,
                        "histogram | growth | stragglers | largest | runs | abc-index | abc-max")
        ->required()
        ->check(CLI::IsMember({"histogram", "growth", "stragglers", "largest", "runs",
                               "abc-index", "abc-max"}));
    analyze->add_option("--file", an_file, "member file input");
    analyze->add_option("--files", an_files, "member files, one per prime (growth)");
    analyze->add_option("--old", an_old, "previous member file (stragglers)");
    analyze->add_option("--new", an_new, "current member file (stragglers)");
    analyze->add_option("--bins", an_bins, "histogram bins");
    analyze->add_option("--h-max", an_hmax, "largest run length (runs)");
    analyze->add_option("--limit", an_limit, "C limit (abc-max)");
    analyze->add_option("--a", an_a, "A (abc-index)");
    analyze->add_option("--b", an_b, "B (abc-index)");
    analyze->add_option("--c", an_c, "C (abc-index; default B+1 when only --b given)");
    analyze->add_option("--out", an_out, "CSV path, - for stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (closure->parsed()) return run_closure(ca);

        if (closure2->parsed()) {
            sn::MemberFile base = sn::read_member_file(c2_base);
            if (base.k != 1) {
                std::cerr << "closure2 needs a k=1 base file\n";
                return kExitIo;
            }
            auto members = sn::even_neighbors_from(base.members, c2_workers);
            std::cout << members.size() << " difference-2 members\n";
            if (!c2_out.empty()) {
                sn::MemberFile f;
                f.k = 2;
                f.z = base.z;
                f.complete = false;  // derived search space, never known complete
                f.members = std::move(members);
                sn::write_member_file(f, c2_out);
            }
            return 0;
        }

        if (verify->parsed()) return run_verify(v_file, v_z);

        if (certify->parsed()) {
            sn::MemberFile base = sn::read_member_file(cert_base_file);
            sn::BuildOptions opts;
            opts.depth_limit = cert_depth;
            auto tree = sn::build_tree(sn::parse_nat(cert_beta), base.to_set(), cert_base_id, opts);
            if (!tree) {
                std::cout << "no certificate found within depth " << cert_depth << "\n";
                return kExitVerifyFail;
            }
            if (!cert_out.empty()) sn::save_certificate(*tree, cert_out);
            std::cout << "certificate built for " << cert_beta << "\n";
            return 0;
        }

        if (check->parsed()) {
            sn::DecompTree tree = sn::load_certificate(cc_cert);
            sn::BaseSets bases = collect_bases(cc_bases, cc_smooth);
            auto report = sn::verify_tree(tree, bases);
            if (!cc_quiet)
                for (const auto& e : report.checks)
                    std::cout << (e.ok ? "ok   " : "FAIL ") << e.what << "\n";
            std::cout << (report.pass ? "PASS" : "FAIL") << " (" << report.checks.size()
                      << " checks)\n";
            return report.pass ? 0 : kExitVerifyFail;
        }

        if (beta_pairs->parsed()) {
            sn::Nat beta = sn::parse_nat(bp_beta);
            if (bp_mode == "min-prime") {
                auto r = sn::min_smoothness_over_parents(beta, sn::SmoothBound(bp_cap), {},
                                                         bp_workers);
                std::cout << "p_min " << sn::to_string(r.p_min) << "\n";
                for (const auto& [b, B] : r.best_pairs)
                    std::cout << "pair " << sn::to_string(b) << " " << sn::to_string(B) << "\n";
                std::cout << "grid " << r.grid_size << " scanned " << r.pairs_scanned << "\n";
                return 0;
            }
            auto fb = sn::factorize(beta);
            auto fb1 = sn::factorize(beta + 1);
            std::vector<std::vector<std::string>> rows;
            sn::for_each_parent(beta, fb, fb1, [&](const sn::ParentPair& p) {
                rows.push_back({sn::to_string(p.u), sn::to_string(p.v), sn::to_string(p.b),
                                sn::to_string(p.B)});
                return true;
            });
            if (!bp_out.empty())
                sn::write_csv(bp_out, {"u", "v", "b", "B"}, rows);
            else
                for (auto& r : rows)
                    std::cout << r[0] << "," << r[1] << "," << r[2] << "," << r[3] << "\n";
            std::cout << rows.size() << " parent pairs\n";
            return 0;
        }

        if (analyze->parsed()) {
            std::vector<std::string> header;
            std::vector<std::vector<std::string>> rows;
            if (an_kind == "histogram") {
                auto s = sn::read_member_file(an_file).to_set();
                auto h = sn::log_histogram(s, an_bins);
                header = {"bin_lo", "bin_hi", "count"};
                for (size_t i = 0; i < h.counts.size(); ++i)
                    rows.push_back({std::to_string(h.bin_edges[i]),
                                    std::to_string(h.bin_edges[i + 1]),
                                    std::to_string(h.counts[i])});
                std::cout << "mean " << h.mean << " stddev " << h.stddev << "\n";
            } else if (an_kind == "growth") {
                std::map<uint64_t, sn::NeighborSet> sets;
                for (const auto& path : an_files) {
                    auto f = sn::read_member_file(path);
                    sets[f.z] = f.to_set();
                }
                header = {"prime_index", "new_members"};
                for (auto [n, diff] : sn::growth_by_prime(sets))
                    rows.push_back({std::to_string(n), std::to_string(diff)});
            } else if (an_kind == "stragglers") {
                auto c = sn::classify_new_members(sn::read_member_file(an_old).to_set(),
                                                  sn::read_member_file(an_new).to_set());
                header = {"prime", "count"};
                for (const auto& [p, n] : c.counts_by_prime)
                    rows.push_back({sn::to_string(p), std::to_string(n)});
                if (!c.unclassified.empty()) {
                    std::cerr << c.unclassified.size() << " members could not be classified\n";
                    return kExitGaveUp;
                }
            } else if (an_kind == "largest") {
                header = {"q", "b"};
                for (const auto& [q, b] : sn::largest_per_prime(sn::read_member_file(an_file).to_set()))
                    rows.push_back({sn::to_string(q), sn::to_string(b)});
            } else if (an_kind == "runs") {
                header = {"z", "h", "n", "lower_bound"};
                for (const auto& r : sn::longest_runs(sn::read_member_file(an_file).to_set(), an_hmax))
                    rows.push_back({std::to_string(r.z), std::to_string(r.h), sn::to_string(r.n),
                                    r.lower_bound ? "1" : "0"});
            } else if (an_kind == "abc-index") {
                sn::AbcTriple t;
                t.B = sn::parse_nat(an_b);
                t.A = an_a.empty() ? sn::Nat(1) : sn::parse_nat(an_a);
                t.C = an_c.empty() ? sn::Nat(t.B + 1) : sn::parse_nat(an_c);
                auto m = sn::abc_measures(t);
                header = {"A", "B", "C", "rad", "z", "quality", "smoothness_index",
                          "smoothness_exponent"};
                char q[32], si[32], se[32];
                std::snprintf(q, sizeof q, "%.6f", m.quality);
                std::snprintf(si, sizeof si, "%.6f", m.smoothness_index);
                std::snprintf(se, sizeof se, "%.6f", m.smoothness_exponent);
                rows.push_back({sn::to_string(t.A), sn::to_string(t.B), sn::to_string(t.C),
                                sn::to_string(m.radical), sn::to_string(m.z), q, si, se});
            } else if (an_kind == "abc-max") {
                header = {"A", "B", "C", "z", "smoothness_index"};
                for (const auto& r : sn::maximally_smooth_scan(an_limit)) {
                    char si[32];
                    std::snprintf(si, sizeof si, "%.6f", r.smoothness_index);
                    rows.push_back({sn::to_string(r.triple.A), sn::to_string(r.triple.B),
                                    sn::to_string(r.triple.C), std::to_string(r.z), si});
                }
            }
            if (an_out == "-") {
                for (size_t i = 0; i < header.size(); ++i)
                    std::cout << (i ? "," : "") << header[i];
                std::cout << "\n";
                for (auto& r : rows) {
                    for (size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << r[i];
                    std::cout << "\n";
                }
            } else {
                sn::write_csv(an_out, header, rows);
            }
            return 0;
        }
    } catch (const sn::FactorizationGaveUp& e) {
        std::cerr << "factorization gave up: " << e.what() << "\n";
        return kExitGaveUp;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}
