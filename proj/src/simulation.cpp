#include "stepdown/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

#include "stepdown/metrics.hpp"
#include "stepdown/procedures.hpp"

namespace stepdown {

namespace {

constexpr long long kBlock = 4096;

void neumaier_add(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
        comp += (sum - t) + v;
    } else {
        comp += (v - t) + sum;
    }
    sum = t;
}

struct BlockSums {
    double fdp_sum = 0.0, fdp_comp = 0.0;
    double fdp_sq = 0.0, fdp_sq_comp = 0.0;
    long long exceed = 0;
    long long kfwer = 0;
    long long bound = 0;
    long long r_sum = 0;
    long long r_sq = 0;
};

struct TrialScratch {
    std::vector<int> order;
    std::vector<double> sorted;
    std::vector<double> q;
};

void one_trial(const Scenario& scenario, const CriticalSequence& seq, StepMode mode,
               std::uint64_t seed, long long trial, TrialScratch& scratch, BlockSums& acc) {
    rng::Xoshiro256 gen = rng::stream(seed, static_cast<std::uint64_t>(trial));
    const Sample sample = draw(scenario, gen);
    const auto& pv = sample.pvalues.values;
    const int s = static_cast<int>(pv.size());

    scratch.order.resize(s);
    std::iota(scratch.order.begin(), scratch.order.end(), 0);
    std::sort(scratch.order.begin(), scratch.order.end(), [&](int a, int b) {
        if (pv[a] != pv[b]) return pv[a] < pv[b];
        return a < b;
    });
    scratch.sorted.resize(s);
    for (int i = 0; i < s; ++i) scratch.sorted[i] = pv[scratch.order[i]];

    const int r = rejection_count(scratch.sorted, seq.values, mode);
    int v = 0;
    for (int i = 0; i < r; ++i) {
        if (sample.truth.is_true_null[scratch.order[i]]) ++v;
    }

    const double fdp_val = r == 0 ? 0.0 : static_cast<double>(v) / r;
    neumaier_add(acc.fdp_sum, acc.fdp_comp, fdp_val);
    neumaier_add(acc.fdp_sq, acc.fdp_sq_comp, fdp_val * fdp_val);
    // FDP > gamma decided in integers: v/r > num/den <=> v*den > num*r
    const auto& g = seq.params.gamma;
    if (r > 0 && static_cast<std::int64_t>(v) * g.den() > g.num() * static_cast<std::int64_t>(r)) {
        ++acc.exceed;
    }
    if (v >= seq.params.k) ++acc.kfwer;
    acc.r_sum += r;
    acc.r_sq += static_cast<long long>(r) * r;

    scratch.q.clear();
    for (int i = 0; i < s; ++i) {
        if (sample.truth.is_true_null[i]) scratch.q.push_back(pv[i]);
    }
    if (thm32_bound_event(scratch.q, seq.params.alpha, g, seq.params.s)) ++acc.bound;
}

MetricEstimate event_estimate(long long count, long long n) {
    const double p = static_cast<double>(count) / static_cast<double>(n);
    return {p, std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n))};
}

MetricEstimate mean_estimate(double sum, double sumsq, long long n) {
    const double mean = sum / static_cast<double>(n);
    if (n < 2) return {mean, 0.0};
    const double var = std::max(0.0, (sumsq - static_cast<double>(n) * mean * mean) /
                                         static_cast<double>(n - 1));
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace

SimulationReport run(const Scenario& scenario, const CriticalSequence& sequence, StepMode mode,
                     long long trials, std::uint64_t seed, int workers) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    sequence.check();
    if (sequence.params.s != scenario.s) {
        throw std::invalid_argument("scenario size differs from the constant sequence's s");
    }

    const long long nblocks = (trials + kBlock - 1) / kBlock;
    std::vector<BlockSums> blocks(static_cast<size_t>(nblocks));
    std::atomic<long long> next{0};

    auto worker_loop = [&]() {
        TrialScratch scratch;
        while (true) {
            const long long b = next.fetch_add(1);
            if (b >= nblocks) break;
            const long long lo = b * kBlock;
            const long long hi = std::min(trials, lo + kBlock);
            BlockSums acc;
            for (long long t = lo; t < hi; ++t) {
                one_trial(scenario, sequence, mode, seed, t, scratch, acc);
            }
            blocks[static_cast<size_t>(b)] = acc;
        }
    };

    if (workers == 1 || nblocks == 1) {
        worker_loop();
    } else {
        std::vector<std::thread> pool;
        const int n = static_cast<int>(std::min<long long>(workers, nblocks));
        pool.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) pool.emplace_back(worker_loop);
        for (auto& th : pool) th.join();
    }

    double fdp_sum = 0.0, fdp_comp = 0.0, fdp_sq = 0.0, fdp_sq_comp = 0.0;
    long long exceed = 0, kf = 0, bound = 0, r_sum = 0, r_sq = 0;
    for (const auto& b : blocks) {
        neumaier_add(fdp_sum, fdp_comp, b.fdp_sum + b.fdp_comp);
        neumaier_add(fdp_sq, fdp_sq_comp, b.fdp_sq + b.fdp_sq_comp);
        exceed += b.exceed;
        kf += b.kfwer;
        bound += b.bound;
        r_sum += b.r_sum;
        r_sq += b.r_sq;
    }

    SimulationReport report;
    report.scenario = scenario;
    report.sequence = sequence;
    report.mode = mode;
    report.trials = trials;
    report.seed = seed;
    report.workers = workers;
    report.estimates["p_fdp_gt_gamma"] = event_estimate(exceed, trials);
    report.estimates["fdr"] = mean_estimate(fdp_sum + fdp_comp, fdp_sq + fdp_sq_comp, trials);
    report.estimates["kfwer"] = event_estimate(kf, trials);
    report.estimates["mean_rejections"] =
        mean_estimate(static_cast<double>(r_sum), static_cast<double>(r_sq), trials);
    report.estimates["thm32_bound"] = event_estimate(bound, trials);
    return report;
}

}  // namespace stepdown
