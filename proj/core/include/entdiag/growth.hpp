#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "entdiag/circuit.hpp"
#include "entdiag/entanglement.hpp"

namespace entdiag {

enum class EntropyKind { SEE, R2, R4, R6, Smax, Smin };

std::string to_string(EntropyKind kind);
EntropyKind entropy_kind_from_string(const std::string& name);
double report_value(const EntropyReport& report, EntropyKind kind);
const std::vector<EntropyKind>& all_entropy_kinds();

// ensemble mean/stderr of each entropy kind at every depth 0..L_max
struct GrowthCurve {
    int n = 0;
    Architecture architecture = Architecture::Brickwall;
    double p = 1.0;
    int L_max = 0;
    std::vector<uint64_t> seeds;
    std::map<EntropyKind, std::vector<double>> mean;    // length L_max+1
    std::map<EntropyKind, std::vector<double>> stderr_; // standard error of the mean
};

// phenomenological fit of one entropy curve
struct GrowthFit {
    EntropyKind kind;
    int n;
    double velocity;       // bits/layer, through-origin fit on 0..n/2
    double rms_linear;     // RMS deviation from v*L over the fit window
    int L_linear;          // last depth inside the 2*RMS band around v*L
    double saturation;     // mean over 200 <= L <= 250
    double rms_saturation; // RMS deviation from the saturation value on that window
    int L_saturation;      // first depth inside the 2*RMS band around saturation
    double c_k;            // n/2 - saturation
    bool L_linear_flagged = false;      // no depth qualified
    bool L_saturation_flagged = false;  // no depth qualified
};

// evolves each seed layer by layer, recording all requested entropy kinds at
// every depth; aggregation is a fixed-order reduce over the seed list
GrowthCurve run_growth(int n, Architecture arch, const std::vector<uint64_t>& seeds, int L_max,
                       const std::vector<EntropyKind>& kinds, double p = 1.0, int workers = 0);

// through-origin least squares over 0 <= L <= n/2 plus the RMS of that window
std::pair<double, double> fit_velocity(const GrowthCurve& curve, EntropyKind kind);

// saturation value and the two timescales; requires L_max >= 250
GrowthFit fit_timescales(const GrowthCurve& curve, EntropyKind kind);

// CSV columns: L,kind,mean,stderr
void write_growth_csv(const GrowthCurve& curve, const std::string& path);
std::string growth_fit_json(const GrowthFit& fit);

}  // namespace entdiag
