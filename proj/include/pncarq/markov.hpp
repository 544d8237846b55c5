#pragma once

#include <map>
#include <string>
#include <vector>

namespace pncarq {

// Transient absorbing chain over one-round transitions, with restart states
// describing where the system re-enters after each absorption.
struct AbsorbingChain {
    std::vector<std::string> transient;               // state labels
    std::vector<std::vector<double>> transitions;     // transient x transient
    std::vector<std::string> absorbing;               // absorption labels
    std::vector<std::vector<double>> absorb;          // transient x absorbing
    std::map<std::string, std::string> restart;       // absorbing label -> transient label

    int index_of(const std::string& transient_label) const;
    // row sum over transitions + absorption; 1 within 1e-12 for a valid chain
    double row_sum(int i) const;
};

enum class Protocol { noncoupled_tracking, coupled_tracking };

// Builds the window-1 idealized chain for the cross atom by enumerating the
// 2^5 joint outcomes of the per-round events (relay decode ~ direct; two
// downlinks ~ direct; two overhears ~ overhear) and applying the tracking
// update; symmetric states are lumped. Non-coupled: transient
// {phi,O,X,XO,OO,XX}, absorbing {1,2}. Coupled: adds the one-delivered states
// {1phi,1O,1X}, absorbing {2}.
AbsorbingChain enumerate_round_transitions(double direct, double overhear, Protocol protocol);

// For each transient state, the probability of ending in each absorbing label.
// Rows sum to 1 within 1e-10.
std::vector<std::vector<double>> absorption_probabilities(const AbsorbingChain& chain);

// Expected rounds to absorption from each transient state (>= 1).
std::vector<double> expected_sojourn(const AbsorbingChain& chain);

// Idealized benchmark throughputs of the cross atom, packets per round.
double th1(double direct, double overhear);   // non-coupled + tracking
double th2(double direct, double overhear);   // coupled + tracking
double th3(double direct, double overhear);   // no tracking: 2 p1^2 p2
// heterogeneous no-tracking form p1(p2 p4 + p3 p5)
double th3(double relay_decode, double down_c, double down_d, double overhear_c,
           double overhear_d);

// Traditional two-hop relaying baseline, packets per time slot: p/2.
double hop_by_hop(double lsp);
// PNC beats hop-by-hop iff th1(p,p)/slots > p/2, i.e. th1(p,p) > p.
bool pnc_viable(double lsp);

enum class GainProperty { tracking_over_none, noncoupled_over_coupled };

struct GridReport {
    double min_margin = 0.0;
    double argmin_direct = 0.0;
    double argmin_overhear = 0.0;
    bool all_positive = false;
    int points = 0;
};

// Evaluates th1-th3 (tracking gain) or th1-th2 (non-coupled gain) on the grid
// (direct, overhear) in (0,1)^2 at the given step.
GridReport grid_check(GainProperty property, double step);

}  // namespace pncarq
