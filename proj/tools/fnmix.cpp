// fnmix: spectral analysis of reversible chains with function-specific
// mixing times, concentration bounds, confidence intervals, and sequential
// tests. Every subcommand writes its resolved configuration into the output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "fnmix/concentration.hpp"
#include "fnmix/discrepancy.hpp"
#include "fnmix/intervals.hpp"
#include "fnmix/io.hpp"
#include "fnmix/seqtest.hpp"
#include "fnmix/simulate.hpp"
#include "fnmix/spectral_bounds.hpp"
#include "fnmix/zoo.hpp"

using json = nlohmann::json;
using namespace fnmix;

namespace {

long long env_n_max() {
    if (const char* raw = std::getenv("FNMIX_NMAX")) {
        return std::atoll(raw);
    }
    return kDefaultNMax;
}

void emit_json(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw DataMissing("cannot write " + out_path);
        out << j.dump(2) << '\n';
    }
}

// "2..140" (inclusive range) or "2,5,9" explicit list of eigenvalue indices.
std::vector<int> parse_j_spec(const std::string& spec) {
    std::vector<int> J;
    if (spec.empty()) return J;
    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
        const int lo = std::stoi(spec.substr(0, dots));
        const int hi = std::stoi(spec.substr(dots + 2));
        for (int j = lo; j <= hi; ++j) J.push_back(j);
        return J;
    }
    std::istringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ',')) J.push_back(std::stoi(tok));
    return J;
}

struct LoadedProblem {
    TransitionMatrix chain;
    SpectralDecomposition dec;
    std::optional<FunctionOnChain> f;
};

LoadedProblem load_problem(const std::string& chain_path,
                           const std::string& function_path) {
    TransitionMatrix chain = read_chain_json(chain_path);
    SpectralDecomposition dec = spectral_decompose(chain);
    std::optional<FunctionOnChain> f;
    if (!function_path.empty()) {
        f = make_function(chain, read_function_values(function_path));
    }
    return {std::move(chain), std::move(dec), std::move(f)};
}

// T_f(delta) sources: exact matrix iteration, inverted f-gap bound, or
// inverted worst-case oracle bound over J.
MixingTimeBound make_tf_source(const LoadedProblem& p, const std::string& source,
                               const std::vector<int>& J_user, long long n_max) {
    if (!p.f) throw InvalidData("this mixing-time source needs --function");
    const FunctionOnChain f = *p.f;
    if (source == "exact") {
        const TransitionMatrix chain = p.chain;
        return [chain, f, n_max](double delta) {
            auto t = f_mixing_time(chain, f, delta, n_max);
            if (!t) throw PreconditionViolated("T_f(delta) not attained within n_max");
            return static_cast<double>(*t);
        };
    }
    const SpectralDecomposition dec = p.dec;
    const FSpectrum fs = f_spectrum(dec, f);
    const double df0 = (f.values.array() - f.mu).abs().maxCoeff();
    if (source == "fgap") {
        return [dec, fs, df0, n_max](double delta) {
            auto t = invert_bound_to_mixing_time(
                [&](long long n) { return f_gap_bound(dec, fs, df0, n); }, delta, n_max);
            if (!t) throw PreconditionViolated("f-gap bound stays above delta within n_max");
            return static_cast<double>(*t);
        };
    }
    if (source == "oracle") {
        const std::vector<int> J = J_user.empty() ? fs.indices : J_user;
        const JSplit split = make_jsplit(dec, fs, f, J);
        return [dec, fs, split, f, n_max](double delta) {
            auto t = invert_bound_to_mixing_time(
                [&](long long n) { return oracle_bound_worst(dec, fs, split, f, n); },
                delta, n_max);
            if (!t) throw PreconditionViolated("oracle bound stays above delta within n_max");
            return static_cast<double>(*t);
        };
    }
    throw InvalidData("unknown tf source: " + source);
}

Pi0Spec parse_pi0(const std::string& spec, const TransitionMatrix& chain) {
    if (spec.empty() || spec == "stationary") return Pi0Spec::stationary();
    if (spec.rfind("state:", 0) == 0) {
        return Pi0Spec::point_mass(std::stoi(spec.substr(6)));
    }
    // otherwise a function-style file holding an explicit distribution
    Vector v = read_function_values(spec);
    if (v.size() != chain.d()) throw InvalidData("--pi0 length mismatch");
    return Pi0Spec::explicit_dist(v);
}

int verdict_code(Verdict v) {
    switch (v) {
        case Verdict::H0: return 0;
        case Verdict::H1: return 1;
        case Verdict::Indifference: return 2;
        case Verdict::Running: return 3;
    }
    return 3;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::H0: return "H0";
        case Verdict::H1: return "H1";
        case Verdict::Indifference: return "indifference";
        case Verdict::Running: return "running";
    }
    return "running";
}

// ---------------------------------------------------------------------------

int cmd_spectrum(const std::string& chain_path, const std::string& out_path) {
    auto p = load_problem(chain_path, "");
    json j;
    j["config"] = {{"subcommand", "spectrum"}, {"chain", chain_path}};
    j["d"] = p.chain.d();
    j["eigenvalues"] = std::vector<double>(
        p.dec.eigenvalues.data(), p.dec.eigenvalues.data() + p.chain.d());
    j["lambda_star"] = p.dec.lambda_star;
    j["lambda_0"] = p.dec.lambda_0;
    j["gamma_star"] = p.dec.gamma_star;
    j["gamma_0"] = p.dec.gamma_0;
    j["pi_min"] = p.dec.pi_min;
    emit_json(j, out_path);
    return 0;
}

int cmd_discrepancy(const std::string& chain_path, const std::string& function_path,
                    bool tv, long long n_max, const std::string& pi0_spec,
                    const std::string& out_path) {
    auto p = load_problem(chain_path, tv ? "" : function_path);
    CsvWriter csv(out_path);
    std::ostringstream cfg;
    cfg << "discrepancy chain=" << chain_path
        << " kind=" << (tv ? "tv" : "f") << " n_max=" << n_max
        << (pi0_spec.empty() ? "" : " pi0=" + pi0_spec);
    csv.comment(cfg.str());
    csv.header({"n", "value"});
    if (pi0_spec.empty()) {
        DiscrepancyCurve curve = tv ? tv_discrepancy_curve(p.chain, n_max)
                                    : f_discrepancy_curve(p.chain, *p.f, n_max);
        for (long long n = 1; n <= curve.n_max(); ++n) {
            csv.row({static_cast<double>(n), curve.at(n)});
        }
    } else {
        Pi0Spec pi0 = parse_pi0(pi0_spec, p.chain);
        Vector dist;
        if (pi0.kind == Pi0Spec::Kind::PointMass) {
            dist = Vector::Zero(p.chain.d());
            dist(pi0.state) = 1.0;
        } else if (pi0.kind == Pi0Spec::Kind::Explicit) {
            dist = pi0.dist;
        } else {
            dist = p.chain.pi();
        }
        for (long long n = 1; n <= n_max; ++n) {
            const double v = tv ? tv_discrepancy(p.chain, dist, n)
                                : f_discrepancy(p.chain, *p.f, dist, n);
            csv.row({static_cast<double>(n), v});
        }
    }
    return 0;
}

int cmd_mixing_time(const std::string& chain_path, const std::string& function_path,
                    bool tv, double delta, long long n_max, const std::string& out_path) {
    auto p = load_problem(chain_path, tv ? "" : function_path);
    const auto t = tv ? tv_mixing_time(p.chain, delta, n_max)
                      : f_mixing_time(p.chain, *p.f, delta, n_max);
    json j;
    j["config"] = {{"subcommand", "mixing-time"},
                   {"chain", chain_path},
                   {"kind", tv ? "tv" : "f"},
                   {"delta", delta},
                   {"n_max", n_max}};
    if (t) {
        j["mixing_time"] = *t;
    } else {
        j["mixing_time"] = nullptr;
        j["not_attained_within"] = n_max;
    }
    emit_json(j, out_path);
    return 0;
}

struct HoeffdingArgs {
    std::string method = "master";
    double epsilon = 0.1;
    long long N = 0;
    std::string chain_path, function_path;
    std::string tf_source = "exact";
    std::string j_spec;
    double Delta = 0.0, Delta_J = 0.0;
    double gamma0 = 0.0;
    long long burnin = 0;
    bool optimize_t0 = false;
    long long t0_hi = 100000;
    bool one_sided = false;
    std::string out_path;
};

int cmd_hoeffding(const HoeffdingArgs& a) {
    const long long n_max = env_n_max();
    TailBound bound;
    if (a.method == "master") {
        auto p = load_problem(a.chain_path, a.function_path);
        auto tf = make_tf_source(p, a.tf_source, parse_j_spec(a.j_spec), n_max);
        bound = master_hoeffding(a.epsilon, a.N, tf);
    } else if (a.method == "spectral") {
        auto p = load_problem(a.chain_path, a.function_path);
        auto fs = f_spectrum(p.dec, *p.f);
        bound = hoeffding_spectral(a.epsilon, a.N, fs, p.dec.pi_min);
    } else if (a.method == "jsplit") {
        auto p = load_problem(a.chain_path, a.function_path);
        auto fs = f_spectrum(p.dec, *p.f);
        const auto J = parse_j_spec(a.j_spec);
        auto split = make_jsplit(p.dec, fs, *p.f, J.empty() ? fs.indices : J);
        bound = hoeffding_jsplit(a.Delta, a.Delta_J, a.N, split, p.dec.pi_min);
    } else if (a.method == "uniform") {
        double gamma0 = a.gamma0;
        if (!a.chain_path.empty()) {
            gamma0 = load_problem(a.chain_path, "").dec.gamma_0;
        }
        bound = uniform_hoeffding(a.epsilon, a.N, gamma0, !a.one_sided);
    } else if (a.method == "uniform-burnin") {
        auto p = load_problem(a.chain_path, "");
        const auto dtv = [&](long long T0) {
            return std::min(1.0, uniform_tv_bound(p.dec, 1.0, T0));
        };
        if (a.optimize_t0) {
            auto [t0, b] = optimize_burnin(a.epsilon, a.N, p.dec.gamma_0, dtv, 0, a.t0_hi);
            bound = b;
        } else {
            bound = uniform_hoeffding_burnin(a.epsilon, a.N, a.burnin, p.dec.gamma_0,
                                             dtv(a.burnin));
        }
    } else {
        throw InvalidData("unknown hoeffding method: " + a.method);
    }

    json j;
    j["config"] = {{"subcommand", "hoeffding"}, {"method", a.method},
                   {"epsilon", a.epsilon},      {"N", a.N},
                   {"chain", a.chain_path},     {"function", a.function_path},
                   {"tf_source", a.tf_source},  {"J", a.j_spec}};
    j["method"] = bound.method;
    j["epsilon"] = bound.epsilon;
    j["N"] = bound.N;
    j["burnin"] = bound.burnin;
    j["bound"] = bound.value;
    j["n_eff"] = bound.n_eff;
    emit_json(j, a.out_path);
    return 0;
}

struct IntervalArgs {
    std::string method = "adaptive";
    double alpha = 0.05;
    double eta = 0.01;
    double alpha0 = 0.0;  // 0 = optimize
    std::string chain_path, function_path;
    std::string tf_source = "exact";
    long long N = 0;
    uint64_t seed = 0;
    std::string pi0_spec;
    std::string out_path;
};

int cmd_interval(const IntervalArgs& a) {
    const long long n_max = env_n_max();
    auto p = load_problem(a.chain_path, a.function_path);
    auto path = sample_path(p.chain, parse_pi0(a.pi0_spec, p.chain), a.N, a.seed, 0);
    std::vector<double> samples(path.size());
    for (size_t i = 0; i < path.size(); ++i) samples[i] = p.f->values(path[i]);

    ConfidenceInterval ci;
    if (a.method == "uniform") {
        const auto T_at = [&](double delta) {
            auto t = tv_mixing_time(p.chain, delta, n_max);
            if (!t) throw PreconditionViolated("T(delta) not attained within n_max");
            return static_cast<double>(*t);
        };
        ci = (a.alpha0 > 0.0)
                 ? uniform_ci(samples, p.dec.gamma_0, T_at, a.alpha, a.alpha0)
                 : optimize_alpha0(samples, p.dec.gamma_0, T_at, a.alpha);
    } else if (a.method == "adaptive") {
        auto tf = make_tf_source(p, a.tf_source, {}, n_max);
        ci = adaptive_ci(samples, a.alpha, tf, a.eta);
    } else if (a.method == "clt") {
        auto av = asymptotic_variance(p.dec, *p.f);
        ci = berry_esseen_ci(samples, a.alpha, std::sqrt(av.sigma2_asym), p.dec.gamma_0,
                             p.dec.pi_min);
    } else {
        throw InvalidData("unknown interval method: " + a.method);
    }

    json j;
    j["config"] = {{"subcommand", "interval"}, {"method", a.method},
                   {"alpha", a.alpha},         {"eta", a.eta},
                   {"alpha0", a.alpha0},       {"chain", a.chain_path},
                   {"function", a.function_path}, {"N", a.N},
                   {"seed", a.seed},           {"tf_source", a.tf_source}};
    j["method"] = ci.method;
    j["center"] = ci.center;
    j["half_width"] = ci.half_width;
    j["burnin"] = ci.burnin;
    j["diagnostics"] = {{"r_N", ci.diagnostics.r_N},
                        {"alpha0_star", ci.diagnostics.alpha0_star},
                        {"minimum_n_ok", ci.diagnostics.minimum_n_ok}};
    emit_json(j, a.out_path);
    return 0;
}

struct SeqArgs {
    std::string mode = "seq";
    double r = 0.5;
    double delta = 0.1;
    double alpha = 0.1;
    double xi = 0.1;
    std::string param = "adaptive";
    std::string chain_path, function_path;
    std::string tf_source = "exact";
    uint64_t seed = 0;
    int reps = 1;
    long long N0 = 0;
    double M = 0.0;
    long long n_cap = 10000000;
    long long N_fix = 0;
    std::string pi0_spec;
    std::string trace_path;
    std::string out_path;
};

int cmd_seqtest(const SeqArgs& a) {
    const long long n_max = env_n_max();
    auto p = load_problem(a.chain_path, a.function_path);

    SeqTestConfig config;
    config.r = a.r;
    config.delta = a.delta;
    config.alpha = a.alpha;
    config.xi = a.xi;
    config.n_cap = a.n_cap;

    MixingTimeBound tf;
    if (a.param == "adaptive") {
        tf = make_tf_source(p, a.tf_source, {}, n_max);
    }

    std::function<SeqDecision(const SampleStream&)> runner;
    if (a.mode == "fix") {
        config.mode = SeqMode::Fix;
        long long N = a.N_fix;
        if (N == 0) {
            N = (a.param == "adaptive")
                    ? algfix_sample_size(a.delta, a.alpha, tf)
                    : algfix_sample_size_uniform(a.delta, a.alpha, p.dec.gamma_0);
        }
        runner = [&, N](const SampleStream& s) { return algfix_run(s, a.r, a.delta, N); };
    } else if (a.mode == "seq") {
        config.mode = SeqMode::Seq;
        config.M = a.M;
        if (config.M == 0.0) {
            config.M = (a.param == "adaptive")
                           ? algseq_margin(a.delta, a.alpha, a.xi, tf)
                           : algseq_margin_uniform(a.delta, a.alpha, a.xi, p.dec.gamma_0);
        }
        runner = [&](const SampleStream& s) { return algseq_run(s, config); };
    } else if (a.mode == "diff") {
        config.mode = SeqMode::Diff;
        config.N0 = a.N0 > 0
                        ? a.N0
                        : static_cast<long long>(std::floor(100.0 / p.dec.gamma_0));
        const double gamma0 = p.dec.gamma_0;
        auto eps_k = (a.param == "adaptive")
                         ? std::function<double(int, long long)>(
                               [&, tf](int k, long long Nk) {
                                   return algdiff_epsilon_k(a.alpha, k, Nk, tf);
                               })
                         : std::function<double(int, long long)>(
                               [gamma0, &a](int k, long long Nk) {
                                   return algdiff_epsilon_k_uniform(a.alpha, k, Nk, gamma0);
                               });
        runner = [&, eps_k](const SampleStream& s) {
            return algdiff_run(s, config, eps_k);
        };
    } else {
        throw InvalidData("unknown seqtest mode: " + a.mode);
    }

    json runs = json::array();
    std::optional<CsvWriter> trace;
    if (!a.trace_path.empty()) {
        trace.emplace(a.trace_path);
        trace->header({"rep", "k", "N_k", "mean", "band"});
    }
    for (int rep = 0; rep < a.reps; ++rep) {
        auto stream =
            make_chain_stream(p.chain, *p.f, parse_pi0(a.pi0_spec, p.chain), a.seed, rep);
        SeqDecision decision = runner(stream);
        runs.push_back({{"rep", rep},
                        {"verdict", verdict_name(decision.verdict)},
                        {"stop_index", decision.stop_index},
                        {"k_stop", decision.k_stop}});
        if (trace) {
            for (size_t k = 0; k < decision.trace.size(); ++k) {
                trace->row({static_cast<double>(rep), static_cast<double>(k + 1),
                            static_cast<double>(decision.trace[k].N_k),
                            decision.trace[k].mean, decision.trace[k].band});
            }
        }
    }

    json j;
    j["config"] = {{"subcommand", "seqtest"}, {"mode", a.mode},     {"r", a.r},
                   {"delta", a.delta},        {"alpha", a.alpha},   {"xi", a.xi},
                   {"param", a.param},        {"chain", a.chain_path},
                   {"function", a.function_path}, {"seed", a.seed}, {"reps", a.reps},
                   {"M", config.M},           {"N0", config.N0},   {"n_cap", a.n_cap}};
    j["runs"] = runs;
    emit_json(j, a.out_path);
    // single-run convenience: exit reflects nothing, verdict is in the JSON
    return 0;
}

// --- zoo ---------------------------------------------------------------------

int cmd_zoo_cycle(int d, const std::vector<int>& js, const std::string& prefix) {
    auto chain = lazy_cycle(d);
    write_chain_json(chain, prefix + "chain.json");
    write_function_json(cycle_parity(chain).values, prefix + "parity.json");
    std::vector<int> freqs = js;
    if (freqs.empty()) freqs = {1, d / 2, d};
    for (int j : freqs) {
        write_function_json(cycle_periodic_function(chain, j).values,
                            prefix + "f" + std::to_string(j) + ".json");
    }
    return 0;
}

int cmd_zoo_line(int d, double delta, const std::string& prefix) {
    auto chain = line_chain(d);
    write_chain_json(chain, prefix + "chain.json");
    write_function_json(threshold_function(chain, delta).values,
                        prefix + "threshold.json");
    return 0;
}

int cmd_zoo_oring(const std::string& data_path, const std::string& prefix) {
    auto model = oring_mh_chain(read_logistic_csv(data_path));
    write_chain_json(model.chain, prefix + "chain.json");
    write_function_json(model.f65.values, prefix + "f65.json");
    return 0;
}

int cmd_zoo_mixture(const std::string& data_path, const MixturePriors& priors,
                    const std::string& prefix) {
    auto model = mixture_gibbs_chain(read_mixture_csv(data_path), priors);
    write_chain_json(model.chain, prefix + "chain.json");
    write_function_json(model.recovery.values, prefix + "recovery.json");
    return 0;
}

// --- simulate ----------------------------------------------------------------

struct SimArgs {
    std::string what = "tail";
    std::string chain_path, function_path;
    std::string pi0_spec;
    long long N = 0;
    int reps = 100;
    uint64_t seed = 0;
    double epsilon = 0.1;
    long long burnin = 0;
    // coverage
    std::string method = "adaptive";
    double alpha = 0.05;
    double eta = 0.01;
    std::string tf_source = "exact";
    // seqtest
    std::string mode = "seq";
    double r = 0.5, delta = 0.1, xi = 0.1;
    std::string truth = "H0";
    std::string csv_path;
    std::string out_path;
};

int cmd_simulate(const SimArgs& a) {
    const long long n_max = env_n_max();
    auto p = load_problem(a.chain_path, a.function_path);
    SimPlan plan;
    plan.pi0 = parse_pi0(a.pi0_spec, p.chain);
    plan.N = a.N;
    plan.reps = a.reps;
    plan.seed = a.seed;

    json summary;
    summary["config"] = {{"subcommand", "simulate"}, {"what", a.what},
                         {"chain", a.chain_path},    {"function", a.function_path},
                         {"N", a.N},                 {"reps", a.reps},
                         {"seed", a.seed},           {"epsilon", a.epsilon},
                         {"burnin", a.burnin},       {"method", a.method},
                         {"alpha", a.alpha},         {"mode", a.mode}};

    std::optional<CsvWriter> csv;
    if (!a.csv_path.empty()) csv.emplace(a.csv_path);

    if (a.what == "tail") {
        if (csv) {
            csv->header({"rep", "mean", "exceeded"});
            ChainSampler sampler(p.chain);
            for (int rep = 0; rep < a.reps; ++rep) {
                auto path = sample_path(p.chain, plan.pi0, a.N, a.seed, rep);
                double sum = 0.0;
                for (long long n = a.burnin; n < a.N; ++n) {
                    sum += p.f->values(path[static_cast<size_t>(n)]);
                }
                const double mean = sum / static_cast<double>(a.N - a.burnin);
                csv->row({static_cast<double>(rep), mean,
                          mean >= p.f->mu + a.epsilon ? 1.0 : 0.0});
            }
        }
        auto est = empirical_tail(p.chain, *p.f, plan, a.epsilon, a.burnin);
        summary["estimate"] = est.estimate;
        summary["std_error"] = est.std_error;
        summary["reps"] = est.reps;
    } else if (a.what == "coverage") {
        IntervalBuilder builder;
        if (a.method == "adaptive") {
            auto tf = make_tf_source(p, a.tf_source, {}, n_max);
            builder = [=, alpha = a.alpha, eta = a.eta](std::span<const double> s) {
                return adaptive_ci(s, alpha, tf, eta);
            };
        } else if (a.method == "uniform") {
            const TransitionMatrix chain = p.chain;
            const double gamma0 = p.dec.gamma_0;
            const auto T_at = [chain, n_max](double delta) {
                auto t = tv_mixing_time(chain, delta, n_max);
                if (!t) throw PreconditionViolated("T(delta) not attained");
                return static_cast<double>(*t);
            };
            builder = [=, alpha = a.alpha](std::span<const double> s) {
                return optimize_alpha0(s, gamma0, T_at, alpha);
            };
        } else {
            throw InvalidData("coverage method must be adaptive or uniform");
        }
        auto est = empirical_coverage(p.chain, *p.f, plan, builder);
        summary["coverage"] = est.estimate;
        summary["std_error"] = est.std_error;
        summary["reps"] = est.reps;
    } else if (a.what == "seqtest") {
        SeqArgs sub;
        sub.mode = a.mode;
        sub.r = a.r;
        sub.delta = a.delta;
        sub.alpha = a.alpha;
        sub.xi = a.xi;
        sub.chain_path = a.chain_path;
        sub.function_path = a.function_path;

        SeqTestConfig config;
        config.r = a.r;
        config.delta = a.delta;
        config.alpha = a.alpha;
        config.xi = a.xi;
        auto tf = make_tf_source(p, a.tf_source, {}, n_max);
        SeqRunner runner;
        if (a.mode == "seq") {
            config.mode = SeqMode::Seq;
            config.M = algseq_margin(a.delta, a.alpha, a.xi, tf);
            runner = [config](const SampleStream& s) { return algseq_run(s, config); };
        } else if (a.mode == "diff") {
            config.mode = SeqMode::Diff;
            config.N0 = static_cast<long long>(std::floor(100.0 / p.dec.gamma_0));
            const double alpha = a.alpha;
            auto eps_k = [alpha, tf](int k, long long Nk) {
                return algdiff_epsilon_k(alpha, k, Nk, tf);
            };
            runner = [config, eps_k](const SampleStream& s) {
                return algdiff_run(s, config, eps_k);
            };
        } else {
            throw InvalidData("simulate seqtest mode must be seq or diff");
        }
        const Verdict truth = (a.truth == "H1") ? Verdict::H1 : Verdict::H0;
        auto res = empirical_seqtest(p.chain, *p.f, plan, runner, truth);
        summary["error"] = res.error.estimate;
        summary["error_std_error"] = res.error.std_error;
        summary["mean_stop"] = res.mean_stop;
        summary["capped"] = res.capped;
    } else {
        throw InvalidData("unknown simulate target: " + a.what);
    }
    emit_json(summary, a.out_path);
    return 0;
}

// --- reproduce ---------------------------------------------------------------

int cmd_reproduce_cycle(int d, const std::string& out_dir) {
    auto chain = lazy_cycle(d);
    auto dec = spectral_decompose(chain);
    const std::vector<int> js = {1, d / 2, d};
    const long long n_max = 4000;

    CsvWriter curves(out_dir + "/cycle_discrepancy.csv");
    curves.comment("exact worst-case f_j-discrepancy and f-gap bound, lazy cycle 2d=" +
                   std::to_string(2 * d));
    std::vector<std::string> names = {"n"};
    for (int j : js) {
        names.push_back("exact_j" + std::to_string(j));
        names.push_back("bound_j" + std::to_string(j));
    }
    curves.header(names);
    std::vector<DiscrepancyCurve> exact;
    std::vector<FSpectrum> spectra;
    std::vector<double> df0s;
    for (int j : js) {
        auto f = cycle_periodic_function(chain, j);
        exact.push_back(f_discrepancy_curve(chain, f, n_max));
        spectra.push_back(f_spectrum(dec, f));
        df0s.push_back((f.values.array() - f.mu).abs().maxCoeff());
    }
    for (long long n = 1; n <= n_max; ++n) {
        std::vector<double> row = {static_cast<double>(n)};
        for (size_t i = 0; i < js.size(); ++i) {
            row.push_back(exact[i].at(n));
            row.push_back(f_gap_bound(dec, spectra[i], df0s[i], n));
        }
        curves.row(row);
    }

    CsvWriter times(out_dir + "/cycle_mixing_times.csv");
    times.comment("exact T_fj(delta) against the closed-form trigonometric bound");
    times.header({"j", "delta", "T_exact", "T_bound"});
    for (int j : js) {
        auto f = cycle_periodic_function(chain, j);
        for (double delta : {0.1, 0.01}) {
            auto t = f_mixing_time(chain, f, delta, 1000000);
            times.row({static_cast<double>(j), delta,
                       static_cast<double>(t ? *t : -1),
                       cycle_tf_trig_bound(d, j, delta)});
        }
    }
    return 0;
}

int cmd_reproduce_oring(const std::string& data_path, const std::string& j_spec,
                        const std::string& out_dir) {
    auto model = oring_mh_chain(read_logistic_csv(data_path));
    auto dec = spectral_decompose(model.chain);
    auto fs = f_spectrum(dec, model.f65);
    std::vector<int> J = parse_j_spec(j_spec.empty() ? "2..140" : j_spec);
    // restrict to indices actually inside J_f
    std::vector<int> J_used;
    for (int j : J) {
        if (std::binary_search(fs.indices.begin(), fs.indices.end(), j)) {
            J_used.push_back(j);
        }
    }
    auto split = make_jsplit(dec, fs, model.f65, J_used);
    const double df0 = (model.f65.values.array() - model.f65.mu).abs().maxCoeff();

    const long long n_max = 60;
    auto exact = f_discrepancy_curve(model.chain, model.f65, n_max);
    auto tv = tv_discrepancy_curve(model.chain, n_max);

    CsvWriter csv(out_dir + "/oring_discrepancy.csv");
    csv.comment("discrepancy curves for the failure-probability function at 65F");
    csv.comment("lambda_star=" + format_sig17(dec.lambda_star) +
                " pi_min=" + format_sig17(dec.pi_min));
    csv.header({"n", "exact", "tv", "uniform_bound", "fgap_bound", "oracle_bound"});
    for (long long n = 1; n <= n_max; ++n) {
        csv.row({static_cast<double>(n), exact.at(n), tv.at(n),
                 uniform_tv_bound(dec, 1.0, n), f_gap_bound(dec, fs, df0, n),
                 oracle_bound_worst(dec, fs, split, model.f65, n)});
    }
    return 0;
}

int cmd_reproduce_mixture(const std::string& data_path, const std::string& out_dir) {
    auto model = mixture_gibbs_chain(read_mixture_csv(data_path));
    auto dec = spectral_decompose(model.chain);
    auto fs = f_spectrum(dec, model.recovery);
    auto full = make_jsplit(dec, fs, model.recovery, fs.indices);
    const long long n_max = env_n_max();

    const auto uniform_at = [&](long long n) { return uniform_tv_bound(dec, 1.0, n); };
    const auto fgap_at = [&](long long n) { return f_gap_bound(dec, fs, 1.0, n); };
    const auto oracle_at = [&](long long n) {
        return oracle_bound_worst(dec, fs, full, model.recovery, n);
    };

    CsvWriter csv(out_dir + "/mixture_tf_table.csv");
    csv.comment("mixing-time bounds for the exact-recovery indicator");
    csv.header({"bound_type", "Tf_0.01", "Tf_1e-6"});
    const auto row_for = [&](const std::string& name,
                             const std::function<std::optional<long long>(double)>& t) {
        auto t1 = t(0.01);
        auto t2 = t(1e-6);
        csv.raw_row(name + "," + (t1 ? std::to_string(*t1) : "not_attained") + "," +
                    (t2 ? std::to_string(*t2) : "not_attained"));
    };
    row_for("uniform", [&](double delta) {
        return invert_bound_to_mixing_time(uniform_at, delta, n_max);
    });
    row_for("function_specific", [&](double delta) {
        return invert_bound_to_mixing_time(fgap_at, delta, n_max);
    });
    row_for("oracle", [&](double delta) {
        return invert_bound_to_mixing_time(oracle_at, delta, n_max);
    });
    row_for("actual", [&](double delta) {
        return f_mixing_time(model.chain, model.recovery, delta, n_max);
    });
    return 0;
}

int cmd_reproduce_lowerbound(int d, double epsilon, long long N, int reps,
                             uint64_t seed, const std::string& out_dir) {
    auto chain = line_chain(d);
    auto f = threshold_function(chain, 0.1);
    ChainSampler sampler(chain);
    long long hits = 0;
    for (int rep = 0; rep < reps; ++rep) {
        int state = sampler.initial(Pi0Spec::stationary(), counter_uniform(seed, rep, 0));
        double sum = 0.0;
        for (long long n = 1; n <= N; ++n) {
            state = sampler.step(state, counter_uniform(seed, rep, static_cast<uint64_t>(n)));
            sum += f.values(state);
        }
        if (std::abs(sum / static_cast<double>(N) - 0.5) >= epsilon) ++hits;
    }
    const double est = static_cast<double>(hits) / reps;
    CsvWriter csv(out_dir + "/lowerbound.csv");
    csv.comment("large-deviation frequency on the line chain against the 1/3 floor");
    csv.header({"estimate", "std_error", "reference", "N", "reps"});
    csv.row({est, std::sqrt(est * (1 - est) / reps), 1.0 / 3.0,
             static_cast<double>(N), static_cast<double>(reps)});
    return 0;
}

int cmd_reproduce_hoeffding_compare(const std::string& data_path, long long N,
                                    const std::string& out_dir) {
    auto model = mixture_gibbs_chain(read_mixture_csv(data_path));
    auto dec = spectral_decompose(model.chain);
    auto fs = f_spectrum(dec, model.recovery);
    auto full = make_jsplit(dec, fs, model.recovery, fs.indices);
    const long long n_max = env_n_max();

    const auto tf_oracle = [&](double delta) {
        auto t = invert_bound_to_mixing_time(
            [&](long long n) {
                return oracle_bound_worst(dec, fs, full, model.recovery, n);
            },
            delta, n_max);
        if (!t) throw PreconditionViolated("oracle bound not attained");
        return static_cast<double>(*t);
    };
    const auto dtv = [&](long long T0) {
        return std::min(1.0, uniform_tv_bound(dec, 1.0, T0));
    };

    CsvWriter csv(out_dir + "/hoeffding_compare.csv");
    csv.comment("master bound with oracle T_f versus burn-in-optimized uniform bound");
    csv.header({"epsilon", "master_bound", "uniform_burnin_bound", "T0_star"});
    for (double eps = 0.005; eps <= 0.1 + 1e-12; eps += 0.005) {
        const auto master = master_hoeffding(eps, N, tf_oracle);
        const auto [t0, uniform] = optimize_burnin(eps, N, dec.gamma_0, dtv, 0, 100000);
        csv.row({eps, master.value, uniform.value, static_cast<double>(t0)});
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral mixing analysis for reversible Markov chains"};
    app.require_subcommand(1);

    // spectrum
    std::string chain_path, function_path, out_path;
    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues and spectral gaps");
    spectrum->add_option("--chain", chain_path, "chain JSON file")->required();
    spectrum->add_option("--out", out_path, "output JSON path (default stdout)");

    // discrepancy
    bool tv = false;
    long long n_max_opt = 1000;
    std::string pi0_spec;
    auto* discrepancy = app.add_subcommand("discrepancy", "worst-case discrepancy curve");
    discrepancy->add_option("--chain", chain_path)->required();
    discrepancy->add_option("--function", function_path, "function values file");
    discrepancy->add_flag("--tv", tv, "total-variation distance instead of d_f");
    discrepancy->add_option("--n-max", n_max_opt, "horizon");
    discrepancy->add_option("--pi0", pi0_spec, "start: stationary | state:i | file");
    discrepancy->add_option("--out", out_path, "output CSV path")->required();

    // mixing-time
    double delta_opt = 0.1;
    long long mt_n_max = 0;
    auto* mixing = app.add_subcommand("mixing-time", "first n with discrepancy <= delta");
    mixing->add_option("--chain", chain_path)->required();
    mixing->add_option("--function", function_path);
    mixing->add_flag("--tv", tv);
    mixing->add_option("--delta", delta_opt, "target discrepancy")->required();
    mixing->add_option("--n-max", mt_n_max, "search horizon (default FNMIX_NMAX)");
    mixing->add_option("--out", out_path);

    // hoeffding
    HoeffdingArgs ha;
    auto* hoeffding = app.add_subcommand("hoeffding", "tail probability bounds");
    hoeffding->add_option("--method", ha.method,
                          "master | spectral | jsplit | uniform | uniform-burnin");
    hoeffding->add_option("--epsilon", ha.epsilon, "deviation");
    hoeffding->add_option("--N", ha.N, "sample count")->required();
    hoeffding->add_option("--chain", ha.chain_path);
    hoeffding->add_option("--function", ha.function_path);
    hoeffding->add_option("--tf-source", ha.tf_source,
                          "T_f source for the master bound: exact | fgap | oracle");
    hoeffding->add_option("--J", ha.j_spec, "bad-set indices, e.g. 2..140 or 2,5,9");
    hoeffding->add_option("--Delta", ha.Delta, "good-part deviation (jsplit)");
    hoeffding->add_option("--Delta-J", ha.Delta_J, "bad-part deviation (jsplit)");
    hoeffding->add_option("--gamma0", ha.gamma0, "spectral gap when no chain given");
    hoeffding->add_option("--burnin", ha.burnin, "burn-in T0 (uniform-burnin)");
    hoeffding->add_flag("--optimize-burnin", ha.optimize_t0, "scan T0 for the best bound");
    hoeffding->add_option("--t0-max", ha.t0_hi, "upper end of the burn-in scan");
    hoeffding->add_flag("--one-sided", ha.one_sided, "drop the factor 2");
    hoeffding->add_option("--out", ha.out_path);

    // interval
    IntervalArgs ia;
    auto* interval = app.add_subcommand("interval", "confidence intervals from a path");
    interval->add_option("--method", ia.method, "uniform | adaptive | clt");
    interval->add_option("--alpha", ia.alpha, "target level");
    interval->add_option("--eta", ia.eta, "width floor for the adaptive interval");
    interval->add_option("--alpha0", ia.alpha0, "burn-in level (0 = optimize)");
    interval->add_option("--chain", ia.chain_path)->required();
    interval->add_option("--function", ia.function_path)->required();
    interval->add_option("--tf-source", ia.tf_source);
    interval->add_option("--N", ia.N, "path length")->required();
    interval->add_option("--seed", ia.seed);
    interval->add_option("--pi0", ia.pi0_spec);
    interval->add_option("--out", ia.out_path);

    // seqtest
    SeqArgs sa;
    auto* seqtest = app.add_subcommand("seqtest", "sequential threshold tests");
    seqtest->add_option("--mode", sa.mode, "fix | seq | diff");
    seqtest->add_option("--r", sa.r, "threshold");
    seqtest->add_option("--delta", sa.delta, "indifference half-width");
    seqtest->add_option("--alpha", sa.alpha, "error budget");
    seqtest->add_option("--xi", sa.xi, "schedule growth");
    seqtest->add_option("--param", sa.param, "adaptive (T_f) | uniform (gamma_0)");
    seqtest->add_option("--chain", sa.chain_path)->required();
    seqtest->add_option("--function", sa.function_path)->required();
    seqtest->add_option("--tf-source", sa.tf_source);
    seqtest->add_option("--seed", sa.seed);
    seqtest->add_option("--reps", sa.reps);
    seqtest->add_option("--N0", sa.N0, "initial decision time (diff)");
    seqtest->add_option("--M", sa.M, "margin override (seq)");
    seqtest->add_option("--N", sa.N_fix, "sample-size override (fix)");
    seqtest->add_option("--n-cap", sa.n_cap, "cap turning mu=r into running");
    seqtest->add_option("--pi0", sa.pi0_spec);
    seqtest->add_option("--trace", sa.trace_path, "per-decision CSV");
    seqtest->add_option("--out", sa.out_path);

    // zoo
    auto* zoo = app.add_subcommand("zoo", "example chain constructors");
    zoo->require_subcommand(1);
    int zoo_d = 8;
    double zoo_delta = 0.1;
    std::vector<int> zoo_js;
    std::string zoo_data, zoo_prefix = "zoo_";
    MixturePriors priors;
    auto* zc = zoo->add_subcommand("cycle", "lazy walk on C_{2d}");
    zc->add_option("--d", zoo_d, "half the state count")->required();
    zc->add_option("--j", zoo_js, "periodic function frequencies");
    zc->add_option("--out-prefix", zoo_prefix);
    auto* zl = zoo->add_subcommand("line", "lazy walk on the 2d-state line");
    zl->add_option("--d", zoo_d)->required();
    zl->add_option("--delta", zoo_delta, "threshold step height");
    zl->add_option("--out-prefix", zoo_prefix);
    auto* zo = zoo->add_subcommand("oring", "logistic-regression MH chain");
    zo->add_option("--data", zoo_data, "component failure CSV")->required();
    zo->add_option("--out-prefix", zoo_prefix);
    auto* zm = zoo->add_subcommand("mixture", "collapsed Gibbs mixture chain");
    zm->add_option("--data", zoo_data, "10-observation CSV")->required();
    zm->add_option("--sigma", priors.sigma, "observation noise std");
    zm->add_option("--rho", priors.rho, "prior std of component means");
    zm->add_option("--alpha0", priors.alpha0, "Beta prior parameter");
    zm->add_option("--alpha1", priors.alpha1, "Beta prior parameter");
    zm->add_option("--out-prefix", zoo_prefix);

    // simulate
    SimArgs ma;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo validation runs");
    simulate->add_option("what", ma.what, "tail | coverage | seqtest")->required();
    simulate->add_option("--chain", ma.chain_path)->required();
    simulate->add_option("--function", ma.function_path)->required();
    simulate->add_option("--pi0", ma.pi0_spec);
    simulate->add_option("--N", ma.N, "path length");
    simulate->add_option("--reps", ma.reps)->required();
    simulate->add_option("--seed", ma.seed)->required();
    simulate->add_option("--epsilon", ma.epsilon);
    simulate->add_option("--burnin", ma.burnin);
    simulate->add_option("--method", ma.method);
    simulate->add_option("--alpha", ma.alpha);
    simulate->add_option("--eta", ma.eta);
    simulate->add_option("--tf-source", ma.tf_source);
    simulate->add_option("--mode", ma.mode);
    simulate->add_option("--r", ma.r);
    simulate->add_option("--delta", ma.delta);
    simulate->add_option("--xi", ma.xi);
    simulate->add_option("--truth", ma.truth, "H0 | H1");
    simulate->add_option("--csv", ma.csv_path, "per-replicate CSV");
    simulate->add_option("--out", ma.out_path);

    // reproduce
    auto* reproduce = app.add_subcommand("reproduce", "plot-ready analysis bundles");
    reproduce->require_subcommand(1);
    int rc_d = 32;
    double rc_eps = 0.05;
    long long rc_N = 10;
    int rc_reps = 100000;
    uint64_t rc_seed = 0;
    long long rc_bigN = 1000000;
    std::string rc_data, rc_out = ".", rc_j;
    auto* rcyc = reproduce->add_subcommand("cycle", "discrepancy and bound curves");
    rcyc->add_option("--d", rc_d);
    rcyc->add_option("--out-dir", rc_out);
    auto* ror = reproduce->add_subcommand("oring", "bound comparison curves");
    ror->add_option("--data", rc_data)->required();
    ror->add_option("--J", rc_j, "oracle bad set (default 2..140)");
    ror->add_option("--out-dir", rc_out);
    auto* rmix = reproduce->add_subcommand("mixture", "mixing-time bound table");
    rmix->add_option("--data", rc_data)->required();
    rmix->add_option("--out-dir", rc_out);
    auto* rlow = reproduce->add_subcommand("lowerbound", "large-deviation floor");
    rlow->add_option("--d", rc_d);
    rlow->add_option("--epsilon", rc_eps);
    rlow->add_option("--N", rc_N);
    rlow->add_option("--reps", rc_reps);
    rlow->add_option("--seed", rc_seed);
    rlow->add_option("--out-dir", rc_out);
    auto* rhc = reproduce->add_subcommand("hoeffding-compare", "master vs uniform bounds");
    rhc->add_option("--data", rc_data)->required();
    rhc->add_option("--N", rc_bigN);
    rhc->add_option("--out-dir", rc_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*spectrum) return cmd_spectrum(chain_path, out_path);
        if (*discrepancy) {
            return cmd_discrepancy(chain_path, function_path, tv, n_max_opt, pi0_spec,
                                   out_path);
        }
        if (*mixing) {
            return cmd_mixing_time(chain_path, function_path, tv, delta_opt,
                                   mt_n_max > 0 ? mt_n_max : env_n_max(), out_path);
        }
        if (*hoeffding) return cmd_hoeffding(ha);
        if (*interval) return cmd_interval(ia);
        if (*seqtest) return cmd_seqtest(sa);
        if (*zoo) {
            if (*zc) return cmd_zoo_cycle(zoo_d, zoo_js, zoo_prefix);
            if (*zl) return cmd_zoo_line(zoo_d, zoo_delta, zoo_prefix);
            if (*zo) return cmd_zoo_oring(zoo_data, zoo_prefix);
            if (*zm) return cmd_zoo_mixture(zoo_data, priors, zoo_prefix);
        }
        if (*simulate) return cmd_simulate(ma);
        if (*reproduce) {
            if (*rcyc) return cmd_reproduce_cycle(rc_d, rc_out);
            if (*ror) return cmd_reproduce_oring(rc_data, rc_j, rc_out);
            if (*rmix) return cmd_reproduce_mixture(rc_data, rc_out);
            if (*rlow) {
                return cmd_reproduce_lowerbound(rc_d, rc_eps, rc_N, rc_reps, rc_seed,
                                                rc_out);
            }
            if (*rhc) return cmd_reproduce_hoeffding_compare(rc_data, rc_bigN, rc_out);
        }
    } catch (const PreconditionViolated& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
