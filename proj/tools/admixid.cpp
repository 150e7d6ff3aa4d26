// admixid: command-line front end. Matrices travel as CSV, reports as JSON.
//
// Exit codes: 0 success or equivalent, 1 not equivalent, 2 parse/input error,
// 3 dimension error, 4 recovery or construction failed, 5 precondition violated.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "admixid/conditions.hpp"
#include "admixid/counterexamples.hpp"
#include "admixid/equivalence.hpp"
#include "admixid/io.hpp"
#include "admixid/recovery.hpp"
#include "admixid/report.hpp"
#include "admixid/simulation.hpp"

namespace fs = std::filesystem;
using namespace admixid;

namespace {

enum Exit : int { Ok = 0, NotEquivalent = 1, Parse = 2, Dimension = 3, Failed = 4, Precondition = 5 };

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError:
        case ErrorKind::ShapeError:
        case ErrorKind::IoError:
        case ErrorKind::InvalidMatrix:
        case ErrorKind::EntryOutOfRange: return Parse;
        case ErrorKind::DimensionMismatch:
        case ErrorKind::DimensionBound: return Dimension;
        case ErrorKind::PreconditionViolated:
        case ErrorKind::DeltaOutOfRange:
        case ErrorKind::NoBoundedColumn:
        case ErrorKind::NoBoundedRow:
        case ErrorKind::NoDuplicateColumns:
        case ErrorKind::NotOpenCombination:
        case ErrorKind::UniqueDecomposition: return Precondition;
        default: return Failed;
    }
}

struct Config {
    double eq_tol = 1e-8;
    double rank_tol = 1e-9;
    Seed seed = 0;
    std::string output = "-";
    std::string out_dir = ".";
    std::string format = "csv";

    Tolerance tol() const { return Tolerance{eq_tol, rank_tol}; }
    bool csv() const { return format == "csv"; }
};

void emit(const Config& cfg, const std::string& text) {
    if (cfg.output == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + cfg.output);
    out << text;
}

void emit(const Config& cfg, const Json& report) { emit(cfg, report.dump(2) + "\n"); }

fs::path out_path(const Config& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    return fs::path(cfg.out_dir) / name;
}

FactorPair read_pair(const fs::path& dir, const Tolerance& tol) {
    return FactorPair(FrequencyMatrix(read_matrix(dir / "F.csv"), tol), AdmixtureMatrix(read_matrix(dir / "Q.csv"), tol));
}

int run_check(const Config& cfg, const std::string& f_path, const std::string& q_path) {
    const Tolerance tol = cfg.tol();
    const FrequencyMatrix f(read_matrix(f_path), tol);
    const AdmixtureMatrix q(read_matrix(q_path), tol);
    emit(cfg, to_json(classify(f, q, tol)));
    return Ok;
}

int run_recover(const Config& cfg, const std::string& pi_path, const std::string& regime) {
    const Tolerance tol = cfg.tol();
    const ExpectedFreqMatrix pi(read_matrix(pi_path), tol);
    std::optional<RecoveredFactorization> result;
    try {
        result = regime == "auto" ? recover_auto(pi, tol) : recover(pi, parse_regime(regime), tol);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError) throw;
        std::cerr << "admixid: recovery failed: " << e.what() << "\n";
        return Failed;
    }
    Json report = to_json(*result, !cfg.csv());
    if (cfg.csv()) {
        write_matrix(out_path(cfg, "F.csv"), result->pair.f.matrix());
        write_matrix(out_path(cfg, "Q.csv"), result->pair.q.matrix());
        report["files"] = {{"F", out_path(cfg, "F.csv").string()}, {"Q", out_path(cfg, "Q.csv").string()}};
    }
    emit(cfg, report);
    return Ok;
}

struct CounterexampleArgs {
    std::string construction;
    std::string f_path;
    std::string q_path;
    std::optional<double> delta;
    std::optional<Index> k0;
    std::optional<Index> m;
    std::optional<Index> n;
};

int run_counterexample(const Config& cfg, const CounterexampleArgs& args) {
    const Tolerance tol = cfg.tol();
    const Construction c = parse_construction(args.construction);
    auto load_f = [&] {
        if (args.f_path.empty()) throw Error(ErrorKind::ParseError, "--f is required for " + args.construction);
        return FrequencyMatrix(read_matrix(args.f_path), tol);
    };
    auto load_q = [&] {
        if (args.q_path.empty()) throw Error(ErrorKind::ParseError, "--q is required for " + args.construction);
        return AdmixtureMatrix(read_matrix(args.q_path), tol);
    };
    // N for the constructions that build Q themselves: --n, else Q's width, else K + 1.
    auto individuals = [&](Index k) {
        if (args.n) return *args.n;
        if (!args.q_path.empty()) return load_q().individuals();
        return k + 1;
    };
    auto snps = [&](Index k) {
        if (args.m) return *args.m;
        if (!args.f_path.empty()) return load_f().snps();
        return k + 1;
    };

    std::optional<CounterexamplePair> pair;
    switch (c) {
        case Construction::QInteriorColumn: pair = perturb_interior_q_column(load_f(), load_q(), tol); break;
        case Construction::RRotationQ: pair = rotate_r_q(load_f(), load_q(), args.delta, args.k0, tol); break;
        case Construction::FRowPerturbation: pair = perturb_f_row(load_f(), load_q(), tol); break;
        case Construction::RRotationF: pair = rotate_r_f(load_f(), load_q(), args.delta, args.k0, tol); break;
        case Construction::NecessityPQ: {
            const FrequencyMatrix f = load_f();
            pair = necessity_pq(f, individuals(f.populations()), tol);
            break;
        }
        case Construction::NecessityFRows: {
            const AdmixtureMatrix q = load_q();
            pair = necessity_f_rows(q, snps(q.populations()), tol);
            break;
        }
        case Construction::UnadmixedDupColumn: {
            const FrequencyMatrix f = load_f();
            pair = unadmixed_dup_column(f, individuals(f.populations()), tol);
            break;
        }
        case Construction::UnadmixedMissingAnchor: pair = unadmixed_missing_anchor(load_f(), load_q(), tol); break;
    }

    Json report = to_json(*pair, !cfg.csv());
    if (cfg.csv()) {
        write_matrix(out_path(cfg, "F1.csv"), pair->original.f.matrix());
        write_matrix(out_path(cfg, "Q1.csv"), pair->original.q.matrix());
        write_matrix(out_path(cfg, "F2.csv"), pair->alternative.f.matrix());
        write_matrix(out_path(cfg, "Q2.csv"), pair->alternative.q.matrix());
        report["files"] = {{"F1", out_path(cfg, "F1.csv").string()},
                           {"Q1", out_path(cfg, "Q1.csv").string()},
                           {"F2", out_path(cfg, "F2.csv").string()},
                           {"Q2", out_path(cfg, "Q2.csv").string()}};
    }
    emit(cfg, report);
    return Ok;
}

int run_simulate(const Config& cfg, const std::string& f_path, const std::string& q_path, const std::string& pi_path) {
    const Tolerance tol = cfg.tol();
    Matrix pi;
    if (!pi_path.empty()) {
        pi = read_matrix(pi_path);
    } else {
        if (f_path.empty() || q_path.empty()) throw Error(ErrorKind::ParseError, "simulate needs --pi or both --f and --q");
        pi = multiply(FrequencyMatrix(read_matrix(f_path), tol), AdmixtureMatrix(read_matrix(q_path), tol), tol).matrix();
    }
    const GenotypeMatrix g = simulate_genotypes(pi, cfg.seed);
    if (cfg.csv()) {
        emit(cfg, format_matrix(g.as_real()));
    } else {
        emit(cfg, Json{{"seed", cfg.seed}, {"G", to_json(g.as_real())}});
    }
    return Ok;
}

int run_equiv(const Config& cfg, const std::string& dir1, const std::string& dir2) {
    const Tolerance tol = cfg.tol();
    const EquivalenceVerdict verdict = are_equivalent(read_pair(dir1, tol), read_pair(dir2, tol), tol);
    emit(cfg, to_json(verdict));
    return verdict.equivalent() ? Ok : NotEquivalent;
}

int run_gen(const Config& cfg, const std::string& cls, Index k, Index m, Index n) {
    const Tolerance tol = cfg.tol();
    const ModelClass c = parse_model_class(cls);
    const FactorPair pair = generate_instance(c, k, m, n, cfg.seed, tol);
    Json report{{"class", std::string(to_string(c))}, {"K", k}, {"M", m}, {"N", n}, {"seed", cfg.seed},
                {"conditions", to_json(classify(pair.f, pair.q, tol))}};
    if (cfg.csv()) {
        write_matrix(out_path(cfg, "F.csv"), pair.f.matrix());
        write_matrix(out_path(cfg, "Q.csv"), pair.q.matrix());
        report["files"] = {{"F", out_path(cfg, "F.csv").string()}, {"Q", out_path(cfg, "Q.csv").string()}};
    } else {
        report["F"] = to_json(pair.f.matrix());
        report["Q"] = to_json(pair.q.matrix());
    }
    emit(cfg, report);
    return Ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Identifiability, recovery and counterexamples for admixture factorizations Pi = F Q"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    app.add_option("--tol", cfg.eq_tol, "Entrywise equality tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--rank-tol", cfg.rank_tol, "Relative singular value cutoff")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    app.add_option("-o,--output", cfg.output, "JSON report (or genotype CSV) destination, - for stdout")
        ->capture_default_str();
    app.add_option("--out-dir", cfg.out_dir, "Directory for matrix CSV files")->capture_default_str();
    app.add_option("--format", cfg.format, "csv: matrices as CSV files; json: matrices inside the JSON output")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    std::string f_path, q_path, pi_path;

    auto* check = app.add_subcommand("check", "Report anchor, independence and class membership flags");
    check->add_option("--f", f_path, "F matrix (M x K)")->required();
    check->add_option("--q", q_path, "Q matrix (K x N)")->required();

    std::string regime = "auto";
    auto* recover_cmd = app.add_subcommand("recover", "Recover F and Q from Pi");
    recover_cmd->add_option("--pi", pi_path, "Pi matrix (M x N)")->required();
    recover_cmd->add_option("--regime", regime, "anchorQ, anchorF, unadmixed or auto")
        ->check(CLI::IsMember({"anchorQ", "anchorF", "unadmixed", "auto"}))
        ->capture_default_str();

    CounterexampleArgs cx;
    auto* counter = app.add_subcommand("counterexample", "Emit two non-equivalent pairs with the same product");
    counter->add_option("--construction", cx.construction, "Construction name")->required();
    counter->add_option("--f", cx.f_path, "F matrix");
    counter->add_option("--q", cx.q_path, "Q matrix");
    counter->add_option("--delta", cx.delta, "Rotation parameter in (0, 1/2)");
    counter->add_option("--k0", cx.k0, "Population to rotate (0-based)");
    counter->add_option("--m", cx.m, "Number of SNPs for necessity_F_rows");
    counter->add_option("--n", cx.n, "Number of individuals for necessity_pq and unadmixed_dup_column");

    auto* simulate = app.add_subcommand("simulate", "Draw genotypes G ~ Binomial(2, F Q)");
    simulate->add_option("--f", f_path, "F matrix");
    simulate->add_option("--q", q_path, "Q matrix");
    simulate->add_option("--pi", pi_path, "Pi matrix, instead of --f and --q");

    std::string dir1, dir2;
    auto* equiv = app.add_subcommand("equiv", "Decide whether two pairs differ only by population labels");
    equiv->add_option("--pair1", dir1, "Directory holding F.csv and Q.csv")->required();
    equiv->add_option("--pair2", dir2, "Directory holding F.csv and Q.csv")->required();

    std::string cls;
    Index k = 0, m = 0, n = 0;
    auto* gen = app.add_subcommand("gen", "Generate a random member of a model class");
    gen->add_option("--class", cls, "M' (anchorQ), M'' (anchorF) or M''' (unadmixed)")->required();
    gen->add_option("--k", k, "Populations")->required();
    gen->add_option("--m", m, "SNPs")->required();
    gen->add_option("--n", n, "Individuals")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Ok : Parse;
    }

    try {
        if (*check) return run_check(cfg, f_path, q_path);
        if (*recover_cmd) return run_recover(cfg, pi_path, regime);
        if (*counter) return run_counterexample(cfg, cx);
        if (*simulate) return run_simulate(cfg, f_path, q_path, pi_path);
        if (*equiv) return run_equiv(cfg, dir1, dir2);
        if (*gen) return run_gen(cfg, cls, k, m, n);
    } catch (const Error& e) {
        std::cerr << "admixid: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const fs::filesystem_error& e) {
        std::cerr << "admixid: IoError: " << e.what() << "\n";
        return Parse;
    }
    return Parse;
}
