#include "pncarq/markov.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace pncarq {

namespace {

// Dense solve by Gaussian elimination with partial pivoting; state spaces here
// are tiny (<= 16), so no library dependency is warranted.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
    const size_t n = a.size();
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-14) throw std::runtime_error("singular linear system");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (size_t i = n; i-- > 0;) {
        double s = b[i];
        for (size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

// per-destination epoch state: nothing, a usable overheard packet, or a coded
// packet embedding the pending desired native
enum Pd { none = 0, over = 1, coded = 2 };

std::string pair_label(Pd a, Pd b) {
    // unordered: lump symmetric states
    if (a > b) std::swap(a, b);
    if (a == none && b == none) return "phi";
    if (a == none && b == over) return "O";
    if (a == none && b == coded) return "X";
    if (a == over && b == coded) return "XO";
    if (a == over && b == over) return "OO";
    return "XX";
}

struct Outcome {
    double prob;
    bool relay, down_c, down_d, over_c, over_d;
};

std::vector<Outcome> joint_outcomes(double p1, double p2) {
    std::vector<Outcome> out;
    out.reserve(32);
    for (int bits = 0; bits < 32; ++bits) {
        Outcome o;
        o.relay = bits & 1;
        o.down_c = bits & 2;
        o.down_d = bits & 4;
        o.over_c = bits & 8;
        o.over_d = bits & 16;
        o.prob = (o.relay ? p1 : 1 - p1) * (o.down_c ? p1 : 1 - p1) * (o.down_d ? p1 : 1 - p1) *
                 (o.over_c ? p2 : 1 - p2) * (o.over_d ? p2 : 1 - p2);
        if (o.prob > 0.0) out.push_back(o);
    }
    return out;
}

}  // namespace

int AbsorbingChain::index_of(const std::string& transient_label) const {
    for (size_t i = 0; i < transient.size(); ++i)
        if (transient[i] == transient_label) return static_cast<int>(i);
    throw std::out_of_range("unknown transient state " + transient_label);
}

double AbsorbingChain::row_sum(int i) const {
    double s = 0.0;
    for (double v : transitions[static_cast<size_t>(i)]) s += v;
    for (double v : absorb[static_cast<size_t>(i)]) s += v;
    return s;
}

AbsorbingChain enumerate_round_transitions(double direct, double overhear, Protocol protocol) {
    if (!(direct > 0.0 && direct <= 1.0) || !(overhear > 0.0 && overhear <= 1.0))
        throw std::invalid_argument("probability out of (0,1]");

    const bool coupled = protocol == Protocol::coupled_tracking;
    auto outcomes = joint_outcomes(direct, overhear);

    // ordered states: (state of destination C, state of destination D), plus
    // for coupled the one-delivered states (pending destination's state)
    std::vector<std::string> labels;
    for (const char* l : {"phi", "O", "X", "XO", "OO", "XX"}) labels.push_back(l);
    if (coupled)
        for (const char* l : {"1phi", "1O", "1X"}) labels.push_back(l);

    AbsorbingChain chain;
    chain.transient = labels;
    if (coupled) {
        chain.absorbing = {"2"};
        chain.restart = {{"2", "phi"}};
    } else {
        chain.absorbing = {"1", "2"};
        chain.restart = {{"1", "O"}, {"2", "phi"}};
    }
    const size_t n = labels.size();
    chain.transitions.assign(n, std::vector<double>(n, 0.0));
    chain.absorb.assign(n, std::vector<double>(chain.absorbing.size(), 0.0));

    auto label_index = [&](const std::string& l) {
        for (size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == l) return i;
        throw std::logic_error("label");
    };

    // representative ordered states per lumped label; the homogeneous atom is
    // symmetric under swapping the destinations, so one representative suffices
    const std::map<std::string, std::pair<Pd, Pd>> both_pending = {
        {"phi", {none, none}}, {"O", {over, none}},  {"X", {coded, none}},
        {"XO", {coded, over}}, {"OO", {over, over}}, {"XX", {coded, coded}},
    };

    for (const auto& [label, st] : both_pending) {
        size_t row = label_index(label);
        auto [sc, sd] = st;
        for (const auto& o : outcomes) {
            bool cx = sc == coded || (o.relay && o.down_c);
            bool co = sc == over || o.over_c;
            bool dx = sd == coded || (o.relay && o.down_d);
            bool dok = sd == over || o.over_d;
            bool del_c = cx && co;
            bool del_d = dx && dok;
            if (del_c && del_d) {
                chain.absorb[row][coupled ? 0 : 1] += o.prob;
            } else if (del_c || del_d) {
                if (coupled) {
                    // the pending destination keeps its stored items
                    bool px = del_c ? dx : cx;
                    bool po = del_c ? dok : co;
                    chain.transitions[row][label_index(px ? "1X" : po ? "1O" : "1phi")] += o.prob;
                } else {
                    chain.absorb[row][0] += o.prob;
                }
            } else {
                Pd nc = cx ? coded : co ? over : none;
                Pd nd = dx ? coded : dok ? over : none;
                chain.transitions[row][label_index(pair_label(nc, nd))] += o.prob;
            }
        }
    }

    if (coupled) {
        // one destination done; both sources still transmit the same pair, so
        // the pending destination's overhear link stays live
        const std::map<std::string, Pd> one_pending = {
            {"1phi", none}, {"1O", over}, {"1X", coded}};
        for (const auto& [label, sd] : one_pending) {
            size_t row = label_index(label);
            for (const auto& o : outcomes) {
                bool dx = sd == coded || (o.relay && o.down_d);
                bool dok = sd == over || o.over_d;
                if (dx && dok) {
                    chain.absorb[row][0] += o.prob;
                } else {
                    chain.transitions[row][label_index(dx ? "1X" : dok ? "1O" : "1phi")] += o.prob;
                }
            }
        }
    }
    return chain;
}

std::vector<std::vector<double>> absorption_probabilities(const AbsorbingChain& chain) {
    const size_t n = chain.transient.size();
    std::vector<std::vector<double>> out(n, std::vector<double>(chain.absorbing.size(), 0.0));
    // (I - Q) p^(s) = r^(s)
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - chain.transitions[i][j];
    for (size_t s = 0; s < chain.absorbing.size(); ++s) {
        std::vector<double> b(n, 0.0);
        for (size_t i = 0; i < n; ++i) b[i] = chain.absorb[i][s];
        auto x = solve_dense(a, b);
        for (size_t i = 0; i < n; ++i) out[i][s] = x[i];
    }
    return out;
}

std::vector<double> expected_sojourn(const AbsorbingChain& chain) {
    const size_t n = chain.transient.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - chain.transitions[i][j];
    return solve_dense(a, std::vector<double>(n, 1.0));
}

double th1(double direct, double overhear) {
    auto chain = enumerate_round_transitions(direct, overhear, Protocol::noncoupled_tracking);
    auto ap = absorption_probabilities(chain);
    auto t = expected_sojourn(chain);
    int o = chain.index_of("O");
    int phi = chain.index_of("phi");
    double p12 = ap[static_cast<size_t>(o)][1];    // start O, end in 2
    double p21 = ap[static_cast<size_t>(phi)][0];  // start phi, end in 1
    double P1 = p21 / (p12 + p21);
    double P2 = p12 / (p12 + p21);
    double T1 = t[static_cast<size_t>(o)];
    double T2 = t[static_cast<size_t>(phi)];
    return (P1 + 2.0 * P2) / (P1 * T1 + P2 * T2);
}

double th2(double direct, double overhear) {
    auto chain = enumerate_round_transitions(direct, overhear, Protocol::coupled_tracking);
    auto t = expected_sojourn(chain);
    return 2.0 / t[static_cast<size_t>(chain.index_of("phi"))];
}

double th3(double direct, double overhear) {
    return 2.0 * direct * direct * overhear;
}

double th3(double relay_decode, double down_c, double down_d, double overhear_c,
           double overhear_d) {
    return relay_decode * (down_c * overhear_c + down_d * overhear_d);
}

double hop_by_hop(double lsp) { return lsp / 2.0; }

bool pnc_viable(double lsp) {
    // per-slot comparison: th1(p,p)/2 vs p/2
    return th1(lsp, lsp) / 2.0 > hop_by_hop(lsp);
}

GridReport grid_check(GainProperty property, double step) {
    if (!(step > 0.0 && step <= 0.1)) throw std::invalid_argument("step out of (0, 0.1]");
    GridReport rep;
    bool first = true;
    for (double p1 = step; p1 < 1.0 - 1e-12; p1 += step) {
        for (double p2 = step; p2 < 1.0 - 1e-12; p2 += step) {
            double margin = property == GainProperty::tracking_over_none
                                ? th1(p1, p2) - th3(p1, p2)
                                : th1(p1, p2) - th2(p1, p2);
            ++rep.points;
            if (first || margin < rep.min_margin) {
                rep.min_margin = margin;
                rep.argmin_direct = p1;
                rep.argmin_overhear = p2;
                first = false;
            }
        }
    }
    rep.all_positive = rep.min_margin > 0.0;
    return rep;
}

}  // namespace pncarq
