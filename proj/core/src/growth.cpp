#include "entdiag/growth.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "entdiag/io.hpp"
#include "entdiag/threadpool.hpp"

namespace entdiag {

std::string to_string(EntropyKind kind) {
    switch (kind) {
        case EntropyKind::SEE: return "s_ee";
        case EntropyKind::R2: return "renyi_2";
        case EntropyKind::R4: return "renyi_4";
        case EntropyKind::R6: return "renyi_6";
        case EntropyKind::Smax: return "s_max";
        case EntropyKind::Smin: return "s_min";
    }
    throw std::logic_error("unreachable");
}

EntropyKind entropy_kind_from_string(const std::string& name) {
    for (EntropyKind kind : all_entropy_kinds())
        if (to_string(kind) == name) return kind;
    throw std::invalid_argument("unknown entropy kind: " + name);
}

double report_value(const EntropyReport& report, EntropyKind kind) {
    switch (kind) {
        case EntropyKind::SEE: return report.s_ee;
        case EntropyKind::R2: return report.renyi_2;
        case EntropyKind::R4: return report.renyi_4;
        case EntropyKind::R6: return report.renyi_6;
        case EntropyKind::Smax: return report.s_max;
        case EntropyKind::Smin: return report.s_min;
    }
    throw std::logic_error("unreachable");
}

const std::vector<EntropyKind>& all_entropy_kinds() {
    static const std::vector<EntropyKind> kinds{EntropyKind::SEE, EntropyKind::R2, EntropyKind::R4,
                                                EntropyKind::R6, EntropyKind::Smax, EntropyKind::Smin};
    return kinds;
}

GrowthCurve run_growth(int n, Architecture arch, const std::vector<uint64_t>& seeds, int L_max,
                       const std::vector<EntropyKind>& kinds, double p, int workers) {
    if (n % 2 != 0) throw std::invalid_argument("growth experiments require even n");
    if (n > 20) throw std::invalid_argument("growth resource guard: n > 20 rejected");
    if (seeds.size() < 2) throw std::invalid_argument("growth needs at least 2 seeds");
    if (kinds.empty()) throw std::invalid_argument("no entropy kinds requested");

    // per-seed series, indexed [seed][depth]
    std::vector<std::map<EntropyKind, std::vector<double>>> series(seeds.size());
    parallel_for(seeds.size(), workers, [&](std::size_t s) {
        CircuitSpec spec = CircuitSpec::random(n, L_max, arch, seeds[s], p);
        auto& mine = series[s];
        for (EntropyKind kind : kinds) mine[kind].resize(L_max + 1);
        run_circuit_traced(spec, [&](int depth, const StateVector& state) {
            const EntropyReport report = entropies(partial_trace(state, n / 2));
            for (EntropyKind kind : kinds) mine[kind][depth] = report_value(report, kind);
        });
    });

    GrowthCurve curve;
    curve.n = n;
    curve.architecture = arch;
    curve.p = p;
    curve.L_max = L_max;
    curve.seeds = seeds;
    const double m = static_cast<double>(seeds.size());
    for (EntropyKind kind : kinds) {
        auto& mean = curve.mean[kind];
        auto& se = curve.stderr_[kind];
        mean.assign(L_max + 1, 0.0);
        se.assign(L_max + 1, 0.0);
        for (int depth = 0; depth <= L_max; ++depth) {
            double acc = 0.0;
            for (std::size_t s = 0; s < seeds.size(); ++s) acc += series[s][kind][depth];
            const double mu = acc / m;
            double var = 0.0;
            for (std::size_t s = 0; s < seeds.size(); ++s) {
                const double d = series[s][kind][depth] - mu;
                var += d * d;
            }
            mean[depth] = mu;
            se[depth] = std::sqrt(var / (m - 1.0) / m);
        }
    }
    return curve;
}

std::pair<double, double> fit_velocity(const GrowthCurve& curve, EntropyKind kind) {
    const int window = curve.n / 2;
    if (window + 1 < 2) throw std::invalid_argument("velocity fit window has fewer than 2 points");
    const auto it = curve.mean.find(kind);
    if (it == curve.mean.end()) throw std::invalid_argument("kind not present in curve");
    const auto& mean = it->second;
    if (static_cast<int>(mean.size()) <= window)
        throw std::invalid_argument("curve does not cover the fit window");
    double num = 0.0, den = 0.0;
    for (int L = 0; L <= window; ++L) {
        num += static_cast<double>(L) * mean[L];
        den += static_cast<double>(L) * L;
    }
    const double v = num / den;
    double rss = 0.0;
    for (int L = 0; L <= window; ++L) {
        const double d = mean[L] - v * L;
        rss += d * d;
    }
    return {v, std::sqrt(rss / (window + 1))};
}

GrowthFit fit_timescales(const GrowthCurve& curve, EntropyKind kind) {
    if (curve.L_max < 250) throw std::invalid_argument("timescale fit requires the curve to reach L=250");
    const auto [v, rms_lin] = fit_velocity(curve, kind);
    const auto& mean = curve.mean.at(kind);

    double r = 0.0;
    for (int L = 200; L <= 250; ++L) r += mean[L];
    r /= 51.0;
    double rss = 0.0;
    for (int L = 200; L <= 250; ++L) {
        const double d = mean[L] - r;
        rss += d * d;
    }
    const double rms_sat = std::sqrt(rss / 51.0);

    GrowthFit fit{};
    fit.kind = kind;
    fit.n = curve.n;
    fit.velocity = v;
    fit.rms_linear = rms_lin;
    fit.saturation = r;
    fit.rms_saturation = rms_sat;
    fit.c_k = curve.n / 2.0 - r;

    int L_l = -1;
    for (int L = 0; L <= curve.L_max; ++L)
        if (std::abs(mean[L] - v * L) <= 2.0 * rms_lin) L_l = L;
    fit.L_linear_flagged = L_l < 0;
    fit.L_linear = fit.L_linear_flagged ? 0 : L_l;

    int L_s = -1;
    for (int L = curve.L_max; L >= 0; --L)
        if (std::abs(mean[L] - r) <= 2.0 * rms_sat) L_s = L;
    fit.L_saturation_flagged = L_s < 0;
    fit.L_saturation = fit.L_saturation_flagged ? curve.L_max : L_s;
    return fit;
}

void write_growth_csv(const GrowthCurve& curve, const std::string& path) {
    CsvWriter csv(path, {"L", "kind", "mean", "stderr"});
    for (const auto& [kind, mean] : curve.mean) {
        const auto& se = curve.stderr_.at(kind);
        for (int L = 0; L <= curve.L_max; ++L)
            csv.row(L, to_string(kind), mean[L], se[L]);
    }
}

std::string growth_fit_json(const GrowthFit& fit) {
    nlohmann::json j{{"type", to_string(fit.kind)},
                     {"n", fit.n},
                     {"v_k", fit.velocity},
                     {"L_l", fit.L_linear},
                     {"r", fit.saturation},
                     {"L_s", fit.L_saturation},
                     {"c_k", fit.c_k},
                     {"rms_linear", fit.rms_linear},
                     {"rms_saturation", fit.rms_saturation},
                     {"L_l_flagged", fit.L_linear_flagged},
                     {"L_s_flagged", fit.L_saturation_flagged}};
    return j.dump();
}

}  // namespace entdiag
