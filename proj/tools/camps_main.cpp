// Experiment runner: executes dmrg/camps/ed jobs over (model, L, D) grids and
// the analyze/circuit post-processing jobs, writing tables, circuit logs, and
// reports. Reruns with the same configuration and seed are byte-identical;
// every output file carries the producing configuration's fnv1a64 hash.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "camps/circuit_analysis.hpp"
#include "camps/diagnostics.hpp"
#include "camps/errors.hpp"
#include "camps/exact.hpp"
#include "camps/models.hpp"
#include "camps/solver.hpp"
#include "camps/textio.hpp"

namespace fs = std::filesystem;
using namespace camps;

namespace {

struct Options {
    std::string config_path;
    std::string out_dir;
    uint64_t seed = 0;
    bool seed_set = false;
    long threads = 0;
};

struct Context {
    ConfigMap cfg;
    uint64_t hash = 0;
    fs::path outdir;
    uint64_t seed = 1;
};

using KV = std::vector<std::pair<std::string, std::string>>;

Context make_context(const Options& opt, const std::string& subcommand) {
    std::string text = read_text_file(opt.config_path);
    Context ctx;
    ctx.cfg = parse_config(text);

    static const std::map<std::string, std::vector<std::string>> allowed = {
        {"run", {"dmrg", "camps"}},
        {"oracle", {"ed"}},
        {"analyze", {"analyze"}},
        {"circuit", {"circuit"}},
    };
    const std::string job = ctx.cfg.get("job");
    const auto& jobs = allowed.at(subcommand);
    bool ok = false;
    for (const auto& j : jobs) ok = ok || j == job;
    if (!ok) {
        std::string expect;
        for (const auto& j : jobs) expect += (expect.empty() ? "" : " | ") + j;
        throw FormatError("key 'job': subcommand '" + subcommand + "' expects " + expect +
                              ", got '" + job + "'",
                          ctx.cfg.line_of("job"));
    }

    // The hash covers everything that shapes output bytes: the configuration
    // text and a seed override. The output directory is deliberately not part
    // of it, so the same experiment lands identical files anywhere.
    std::string hash_input = text;
    if (opt.seed_set) hash_input += "\nseed_override = " + std::to_string(opt.seed);
    ctx.hash = fnv1a64(hash_input);

    ctx.outdir = !opt.out_dir.empty() ? fs::path(opt.out_dir)
                                      : fs::path(ctx.cfg.get_or("output.dir", "."));
    fs::create_directories(ctx.outdir);
    ctx.seed = opt.seed_set ? opt.seed : uint64_t(ctx.cfg.get_long_or("solver.seed", 1));
    return ctx;
}

void write_artifact(const Context& ctx, const std::string& name, const std::string& body) {
    write_text_file((ctx.outdir / name).string(), spec_hash_line(ctx.hash) + body);
}

std::string run_tag(const std::string& job, Model model, double g, long L, long D) {
    return job + "_" + model_name(model) + "_g" + format_number(g) + "_L" + std::to_string(L) +
           "_D" + std::to_string(D);
}

std::string ed_tag(Model model, double g, long L) {
    return "ed_" + model_name(model) + "_g" + format_number(g) + "_L" + std::to_string(L);
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

double entropy_at_cut(const std::vector<EntanglementData>& profile, long cut) {
    for (const auto& e : profile)
        if (e.cut == cut) return e.entropy;
    throw ArgumentError("no entropy entry at cut " + std::to_string(cut));
}

TextTable profile_table(const std::vector<EntanglementData>& profile, const std::string& meta) {
    TextTable t;
    t.columns = {"cut", "entropy"};
    t.meta = {meta};
    for (const auto& e : profile) t.rows.push_back({double(e.cut), e.entropy});
    return t;
}

std::vector<std::string> split_csv_words(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

int do_run(const Context& ctx, const std::string& job) {
    const Model model = model_from_name(ctx.cfg.get("model.name"));
    const double g = ctx.cfg.get_double("model.g");
    const auto Ls = ctx.cfg.get_long_list("grid.L");
    const auto Ds = ctx.cfg.get_long_list("grid.D");

    CampsConfig base;
    base.model = model;
    base.g = g;
    base.cutoff = ctx.cfg.get_double_or("solver.cutoff", 1e-12);
    base.n_sweeps_max = ctx.cfg.get_long_or("solver.n_sweeps", 40);
    base.eig_tol = ctx.cfg.get_double_or("solver.eig_tol", 1e-9);
    base.energy_tol = ctx.cfg.get_double_or("solver.energy_tol", 1e-10);
    base.gate_warmup_sweeps = ctx.cfg.get_long_or("solver.warmup", 2);
    base.gate_search_sweeps = ctx.cfg.get_long_or("solver.gate_sweeps", 0);
    base.mode = job == "dmrg"
                    ? GateSearchMode::identity_only
                    : gate_search_mode_from_name(
                          ctx.cfg.get_or("solver.mode", "local_representatives"));
    base.seed = ctx.seed;

    int failures = 0;
    for (long L : Ls)
        for (long D : Ds) {
            const std::string tag = run_tag(job, model, g, L, D);
            CampsConfig c = base;
            c.n_sites = L;
            c.max_bond = D;
            try {
                CampsResult r = run_camps(c);
                KV summary = {
                    {"job", job},
                    {"model", model_name(model)},
                    {"g", format_number(g)},
                    {"L", std::to_string(L)},
                    {"D", std::to_string(D)},
                    {"seed", std::to_string(c.seed)},
                    {"mode", gate_search_mode_name(c.mode)},
                    {"energy", format_number(r.energy)},
                    {"sweeps", std::to_string(r.energy_history.size())},
                    {"converged", bool_text(r.converged)},
                    {"n_gates", std::to_string(r.log.size())},
                    {"center_entropy", format_number(entropy_at_cut(r.profile, L / 2))},
                };
                write_artifact(ctx, tag + "_summary.txt", summary_to_text(summary));
                const std::string meta = "job=" + job + " model=" + model_name(model) +
                                         " g=" + format_number(g) + " L=" + std::to_string(L) +
                                         " D=" + std::to_string(D) +
                                         " seed=" + std::to_string(c.seed);
                write_artifact(ctx, tag + "_profile.txt",
                               table_to_text(profile_table(r.profile, meta)));
                if (job == "camps")
                    write_artifact(ctx, tag + "_circuit.log", circuit_log_to_text(r.log));
                std::cout << tag << " energy=" << format_number(r.energy)
                          << " sweeps=" << r.energy_history.size() << " gates=" << r.log.size()
                          << (r.converged ? "" : " (unconverged)") << "\n";
            } catch (const Error& e) {
                ++failures;
                KV flag = {{"job", job},       {"tag", tag},   {"status", "failed"},
                           {"error", e.what()}};
                write_artifact(ctx, tag + "_FAILED.txt", summary_to_text(flag));
                std::cerr << tag << " failed: " << e.what() << "\n";
            }
        }
    return failures == 0 ? 0 : 2;
}

int do_oracle(const Context& ctx) {
    const Model model = model_from_name(ctx.cfg.get("model.name"));
    const double g = ctx.cfg.get_double("model.g");
    for (long L : ctx.cfg.get_long_list("grid.L")) {
        const std::string tag = ed_tag(model, g, L);
        ExactSolution sol = exact_ground_state(build_model(model, L, g));
        KV summary = {
            {"job", "ed"},
            {"model", model_name(model)},
            {"g", format_number(g)},
            {"L", std::to_string(L)},
            {"energy", format_number(sol.energy)},
            {"degenerate", bool_text(sol.degenerate)},
        };
        write_artifact(ctx, tag + "_summary.txt", summary_to_text(summary));
        std::vector<EntanglementData> profile;
        for (long p = 1; p < L; ++p) profile.push_back(exact_entanglement(sol, p));
        const std::string meta = "job=ed model=" + model_name(model) +
                                 " g=" + format_number(g) + " L=" + std::to_string(L);
        write_artifact(ctx, tag + "_profile.txt", table_to_text(profile_table(profile, meta)));
        std::cout << tag << " energy=" << format_number(sol.energy) << "\n";
    }
    return 0;
}

// Entropy at the requested cut of one stored profile table.
double read_profile_entropy(const fs::path& path, long cut) {
    TextTable t = table_from_text(read_text_file(path.string()));
    long cut_col = -1, s_col = -1;
    for (size_t c = 0; c < t.columns.size(); ++c) {
        if (t.columns[c] == "cut") cut_col = long(c);
        if (t.columns[c] == "entropy") s_col = long(c);
    }
    if (cut_col < 0 || s_col < 0)
        throw FormatError("profile table " + path.string() + " lacks cut/entropy columns");
    for (const auto& row : t.rows)
        if (long(row[size_t(cut_col)] + 0.5) == cut) return row[size_t(s_col)];
    throw ArgumentError("no cut " + std::to_string(cut) + " in " + path.string());
}

int do_analyze(const Context& ctx) {
    const Model model = model_from_name(ctx.cfg.get("model.name"));
    const double g = ctx.cfg.get_double("model.g");
    const fs::path indir = ctx.cfg.has("input.dir") ? fs::path(ctx.cfg.get("input.dir"))
                                                    : ctx.outdir;
    const auto Ls = ctx.cfg.get_long_list("analyze.L");
    const long D = ctx.cfg.get_long("analyze.D");
    const std::string cut_kind = ctx.cfg.get_or("analyze.cut", "half");
    if (cut_kind != "half" && cut_kind != "quarter")
        throw FormatError("key 'analyze.cut': expected half | quarter, got '" + cut_kind + "'",
                          ctx.cfg.line_of("analyze.cut"));
    const long den = cut_kind == "half" ? 2 : 4;
    const auto sources = split_csv_words(ctx.cfg.get_or("analyze.sources", "dmrg, camps"));
    for (const auto& s : sources)
        if (s != "dmrg" && s != "camps")
            throw FormatError("key 'analyze.sources': unknown source '" + s + "'",
                              ctx.cfg.line_of("analyze.sources"));

    KV report = {
        {"job", "analyze"},
        {"model", model_name(model)},
        {"g", format_number(g)},
        {"D", std::to_string(D)},
        {"cut", cut_kind},
    };

    std::map<std::string, std::vector<std::pair<double, double>>> entropies;
    for (const auto& src : sources) {
        auto& pts = entropies[src];
        for (long L : Ls)
            pts.emplace_back(double(L),
                             read_profile_entropy(
                                 indir / (run_tag(src, model, g, L, D) + "_profile.txt"),
                                 L / den));
        try {
            FitResult fit = fit_central_charge(pts);
            report.emplace_back("c_" + src, format_number(fit.c));
            report.emplace_back("b_" + src, format_number(fit.b));
            report.emplace_back("cfit_residual_" + src, format_number(fit.residual));
        } catch (const FitError& e) {
            report.emplace_back("c_" + src, std::string("failed: ") + e.what());
        }
    }

    bool have_both = entropies.count("dmrg") && entropies.count("camps");
    if (have_both) {
        TextTable deltas;
        deltas.columns = {"L", "entropy_dmrg", "entropy_camps", "delta"};
        deltas.meta = {"model=" + model_name(model) + " g=" + format_number(g) +
                       " D=" + std::to_string(D) + " cut=" + cut_kind};
        std::vector<std::pair<double, double>> dpts;
        for (size_t i = 0; i < Ls.size(); ++i) {
            double sd = entropies["dmrg"][i].second;
            double sc = entropies["camps"][i].second;
            deltas.rows.push_back({double(Ls[i]), sd, sc, sd - sc});
            dpts.emplace_back(double(Ls[i]), sd - sc);
        }
        write_artifact(ctx,
                       "analyze_" + model_name(model) + "_g" + format_number(g) + "_D" +
                           std::to_string(D) + "_deltas.txt",
                       table_to_text(deltas));
        try {
            DeltaSFit fit = fit_entropy_reduction(dpts);
            report.emplace_back("gamma", format_number(fit.gamma));
            report.emplace_back("alpha", format_number(fit.alpha));
            report.emplace_back("beta", format_number(fit.beta));
            report.emplace_back("gamma_fit_residual", format_number(fit.residual));
        } catch (const FitError& e) {
            report.emplace_back("gamma", std::string("failed: ") + e.what());
        }
    }

    // Energy check against stored exact-diagonalization references, where
    // those exist (small L only).
    long checked = 0;
    double worst = 0.0;
    for (long L : Ls) {
        const fs::path ed_path = indir / (ed_tag(model, g, L) + "_summary.txt");
        if (!fs::exists(ed_path)) continue;
        const double e_ref =
            parse_config(read_text_file(ed_path.string())).get_double("energy");
        for (const auto& src : sources) {
            const fs::path run_path =
                indir / (run_tag(src, model, g, L, D) + "_summary.txt");
            const double e = parse_config(read_text_file(run_path.string())).get_double("energy");
            worst = std::max(worst, relative_energy_error(e, e_ref));
            ++checked;
        }
    }
    report.emplace_back("ed_checked", std::to_string(checked));
    if (checked > 0) report.emplace_back("max_energy_rel_err", format_number(worst));

    const std::string name = "analyze_" + model_name(model) + "_g" + format_number(g) + "_D" +
                             std::to_string(D) + "_report.txt";
    write_artifact(ctx, name, summary_to_text(report));
    std::cout << name << "\n";
    return 0;
}

const char* pattern_name(PatternKind k) {
    switch (k) {
        case PatternKind::cnot_staircase: return "cnot_staircase";
        case PatternKind::swap_pyramid_present: return "swap_pyramid_present";
        default: return "other";
    }
}

int do_circuit(const Context& ctx) {
    const Model model = model_from_name(ctx.cfg.get("model.name"));
    const double g = ctx.cfg.get_double("model.g");
    const long L = ctx.cfg.get_long("circuit.n_sites");
    const fs::path indir = ctx.cfg.has("input.dir") ? fs::path(ctx.cfg.get("input.dir"))
                                                    : ctx.outdir;
    const fs::path log_path = indir / ctx.cfg.get("circuit.log");

    CircuitLog log = circuit_log_from_text(read_text_file(log_path.string()));
    Circuit circ = circuit_from_log(L, log);
    Circuit canon = canonicalize_circuit(circ);
    PatternReport pattern = detect_pattern(circ);

    PauliSum hc = conjugate_full_hamiltonian(build_model(model, L, g), circ);
    PauliSum target =
        model == Model::ising ? dual_ising_chain(L, g) : ashkin_teller_chain(L, g);
    MatchReport match = match_dual_model(hc, target);

    const std::string base =
        "circuit_" + model_name(model) + "_g" + format_number(g) + "_L" + std::to_string(L);
    KV report = {
        {"job", "circuit"},
        {"model", model_name(model)},
        {"g", format_number(g)},
        {"L", std::to_string(L)},
        {"n_gates_logged", std::to_string(circ.gates.size())},
        {"n_gates_canonical", std::to_string(canon.gates.size())},
        {"pattern", pattern_name(pattern.kind)},
        {"pattern_detail", pattern.summary},
        {"dual_matched", bool_text(match.matched)},
    };
    if (match.matched) {
        for (long j = 0; j < L; ++j)
            report.emplace_back("rot_" + std::to_string(j), match.local_rotation[size_t(j)].encode());
    } else {
        report.emplace_back("residual_terms", std::to_string(match.residual_terms.n_terms()));
        write_artifact(ctx, base + "_residual.txt", pauli_sum_to_text(match.residual_terms));
    }
    write_artifact(ctx, base + "_report.txt", summary_to_text(report));
    write_artifact(ctx, base + "_hconj.txt", pauli_sum_to_text(hc));
    std::cout << base << " pattern=" << pattern_name(pattern.kind)
              << " matched=" << bool_text(match.matched) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ground-state experiments: DMRG / Clifford-augmented MPS, exact references, "
                 "and circuit analysis"};
    app.require_subcommand(1);

    Options opt;
    std::vector<std::pair<CLI::App*, std::string>> subs;
    for (const auto& [name, help] :
         std::vector<std::pair<std::string, std::string>>{
             {"run", "execute a dmrg or camps job over its (L, D) grid"},
             {"oracle", "execute an ed job (exact references, L <= 14)"},
             {"analyze", "fit central charge / entropy reduction over stored runs"},
             {"circuit", "canonicalize, classify, and dual-match a stored circuit log"}}) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opt.config_path, "configuration file")->required();
        sub->add_option("--out", opt.out_dir, "output directory (overrides output.dir)");
        sub->add_option("--seed", opt.seed, "seed override (also folded into the spec hash)")
            ->each([&opt](const std::string&) { opt.seed_set = true; });
        sub->add_option("--threads", opt.threads, "linear-algebra thread cap");
        subs.emplace_back(sub, name);
    }

    CLI11_PARSE(app, argc, argv);

    if (opt.threads > 0) Eigen::setNbThreads(int(opt.threads));

    try {
        std::string name;
        for (const auto& [sub, n] : subs)
            if (sub->parsed()) name = n;
        Context ctx = make_context(opt, name);
        const std::string job = ctx.cfg.get("job");
        if (name == "run") return do_run(ctx, job);
        if (name == "oracle") return do_oracle(ctx);
        if (name == "analyze") return do_analyze(ctx);
        return do_circuit(ctx);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
