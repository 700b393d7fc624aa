#include "fnmix/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace fnmix {

ChainSampler::ChainSampler(const TransitionMatrix& chain) : d_(chain.d()) {
    const int d = d_;
    cum_.resize(static_cast<size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
        double acc = 0.0;
        for (int j = 0; j < d; ++j) {
            acc += chain.P()(i, j);
            cum_[static_cast<size_t>(i) * d + j] = acc;
        }
        cum_[static_cast<size_t>(i) * d + d - 1] = 1.0;  // guard against rounding
    }
    cum_pi_ = Vector(d);
    double acc = 0.0;
    for (int i = 0; i < d; ++i) {
        acc += chain.pi()(i);
        cum_pi_(i) = acc;
    }
    cum_pi_(d - 1) = 1.0;
}

int ChainSampler::sample_row(const double* cum_row, double u) const {
    const int d = this->d();
    const double* end = cum_row + d;
    const double* it = std::upper_bound(cum_row, end, u);
    return static_cast<int>(std::min<std::ptrdiff_t>(it - cum_row, d - 1));
}

int ChainSampler::initial(const Pi0Spec& pi0, double u) const {
    switch (pi0.kind) {
        case Pi0Spec::Kind::PointMass:
            if (pi0.state < 0 || pi0.state >= d()) throw InvalidData("bad start state");
            return pi0.state;
        case Pi0Spec::Kind::Stationary:
            return sample_row(cum_pi_.data(), u);
        case Pi0Spec::Kind::Explicit: {
            if (pi0.dist.size() != d()) throw InvalidData("bad start distribution");
            double acc = 0.0;
            for (int i = 0; i < d(); ++i) {
                acc += pi0.dist(i);
                if (u < acc) return i;
            }
            return d() - 1;
        }
    }
    throw InvalidData("unknown start kind");
}

int ChainSampler::step(int from, double u) const {
    return sample_row(cum_.data() + static_cast<size_t>(from) * d_, u);
}

std::vector<int> sample_path(const TransitionMatrix& chain, const Pi0Spec& pi0,
                             long long N, uint64_t seed, uint64_t rep) {
    ChainSampler sampler(chain);
    std::vector<int> path(static_cast<size_t>(N));
    int state = sampler.initial(pi0, counter_uniform(seed, rep, 0));
    for (long long n = 1; n <= N; ++n) {
        state = sampler.step(state, counter_uniform(seed, rep, static_cast<uint64_t>(n)));
        path[static_cast<size_t>(n - 1)] = state;
    }
    return path;
}

SampleStream make_chain_stream(const TransitionMatrix& chain, const FunctionOnChain& f,
                               const Pi0Spec& pi0, uint64_t seed, uint64_t rep) {
    auto sampler = std::make_shared<ChainSampler>(chain);
    auto values = std::make_shared<Vector>(f.values);
    auto state = std::make_shared<int>(sampler->initial(pi0, counter_uniform(seed, rep, 0)));
    auto step = std::make_shared<uint64_t>(0);
    return [sampler, values, state, step, seed, rep]() -> std::optional<double> {
        ++*step;
        *state = sampler->step(*state, counter_uniform(seed, rep, *step));
        return (*values)(*state);
    };
}

namespace {

MCEstimate frequency_estimate(long long hits, int reps) {
    MCEstimate est;
    est.reps = reps;
    est.estimate = static_cast<double>(hits) / reps;
    est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) / reps);
    return est;
}

}  // namespace

MCEstimate empirical_tail(const TransitionMatrix& chain, const FunctionOnChain& f,
                          const SimPlan& plan, double epsilon, long long burnin) {
    if (plan.N <= burnin) throw InvalidData("need N > burnin");
    ChainSampler sampler(chain);
    long long hits = 0;
    for (int rep = 0; rep < plan.reps; ++rep) {
        int state = sampler.initial(plan.pi0, counter_uniform(plan.seed, rep, 0));
        double sum = 0.0;
        for (long long n = 1; n <= plan.N; ++n) {
            state = sampler.step(state,
                                 counter_uniform(plan.seed, rep, static_cast<uint64_t>(n)));
            if (n > burnin) sum += f.values(state);
        }
        const double mean = sum / static_cast<double>(plan.N - burnin);
        if (mean >= f.mu + epsilon) ++hits;
    }
    return frequency_estimate(hits, plan.reps);
}

MCEstimate empirical_coverage(const TransitionMatrix& chain, const FunctionOnChain& f,
                              const SimPlan& plan, const IntervalBuilder& builder) {
    ChainSampler sampler(chain);
    std::vector<double> samples(static_cast<size_t>(plan.N));
    long long covered = 0;
    for (int rep = 0; rep < plan.reps; ++rep) {
        int state = sampler.initial(plan.pi0, counter_uniform(plan.seed, rep, 0));
        for (long long n = 1; n <= plan.N; ++n) {
            state = sampler.step(state,
                                 counter_uniform(plan.seed, rep, static_cast<uint64_t>(n)));
            samples[static_cast<size_t>(n - 1)] = f.values(state);
        }
        const ConfidenceInterval ci = builder(samples);
        if (std::abs(ci.center - f.mu) <= ci.half_width) ++covered;
    }
    return frequency_estimate(covered, plan.reps);
}

SeqTestSummary empirical_seqtest(const TransitionMatrix& chain, const FunctionOnChain& f,
                                 const SimPlan& plan, const SeqRunner& runner,
                                 Verdict truth) {
    SeqTestSummary out;
    long long errors = 0;
    double stop_sum = 0.0;
    for (int rep = 0; rep < plan.reps; ++rep) {
        SampleStream stream = make_chain_stream(chain, f, plan.pi0, plan.seed, rep);
        const SeqDecision decision = runner(stream);
        if (decision.verdict == Verdict::Running) {
            ++out.capped;
        } else if (decision.verdict != truth && decision.verdict != Verdict::Indifference) {
            ++errors;
        }
        stop_sum += static_cast<double>(decision.stop_index);
    }
    out.error = frequency_estimate(errors, plan.reps);
    out.mean_stop = stop_sum / plan.reps;
    return out;
}

MCEstimate simulated_asymptotic_variance(const TransitionMatrix& chain,
                                         const FunctionOnChain& f, const SimPlan& plan,
                                         long long segment) {
    if (segment < 1 || plan.N < segment) throw InvalidData("bad segment length");
    ChainSampler sampler(chain);
    const long long per_rep = plan.N / segment;
    double sum2 = 0.0;
    long long count = 0;
    for (int rep = 0; rep < plan.reps; ++rep) {
        int state = sampler.initial(plan.pi0, counter_uniform(plan.seed, rep, 0));
        for (long long s = 0; s < per_rep; ++s) {
            double seg_sum = 0.0;
            for (long long t = 0; t < segment; ++t) {
                const uint64_t step = static_cast<uint64_t>(s * segment + t + 1);
                state = sampler.step(state, counter_uniform(plan.seed, rep, step));
                seg_sum += f.values(state) - f.mu;
            }
            sum2 += seg_sum * seg_sum;
            ++count;
        }
    }
    MCEstimate est;
    est.reps = plan.reps;
    est.estimate = sum2 / static_cast<double>(count) / static_cast<double>(segment);
    // chi-square noise of a pooled second-moment estimate
    est.std_error = est.estimate * std::sqrt(2.0 / static_cast<double>(count));
    return est;
}

}  // namespace fnmix
