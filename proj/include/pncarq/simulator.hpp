#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pncarq/atom.hpp"
#include "pncarq/channel.hpp"
#include "pncarq/tracking.hpp"
#include "pncarq/window.hpp"

namespace pncarq {

enum class FeedbackMode { idealized, realistic };
enum class Coupling { coupled, non_coupled };
enum class TrackingMode { off, single, multi };

std::string to_string(FeedbackMode m);
std::string to_string(Coupling c);
std::string to_string(TrackingMode t);

struct SimConfig {
    AtomSpec atom;
    FeedbackMode mode = FeedbackMode::idealized;
    Coupling coupling = Coupling::non_coupled;
    TrackingMode tracking = TrackingMode::single;
    int window = 1;           // W
    int ack_every = 1;        // N, receptions per ACK
    int ack_header_bytes = 30;   // K
    int data_bytes = 600;        // D
    uint64_t seed = 1;
    uint64_t rounds = 200000;
    uint64_t warmup = 10000;
    int batches = 40;         // batch-means batches for the 95% CI

    // throws std::invalid_argument on violated invariants
    void validate() const;
};

struct SimStats {
    std::vector<uint64_t> delivered;   // per flow, measurement rounds only
    uint64_t measured_rounds = 0;
    uint64_t data_slots = 0;
    double ack_slot_equivalents = 0.0;  // ACK airtime in data-slot units

    uint64_t total_transmissions = 0;
    uint64_t wasteful_transmissions = 0;

    uint64_t ack_emissions = 0;
    uint64_t ack_applied = 0;      // frames that reached and updated their source
    uint64_t ack_collisions = 0;   // rounds where 3+ simultaneous ACKs were lost

    uint64_t extractions_first_iteration = 0;
    uint64_t extractions_beyond_first = 0;

    size_t max_pool_items = 0;     // largest o-pool + c-pool seen at any destination

    double throughput_per_round = 0.0;
    double throughput_per_slot = 0.0;
    double ci95_per_round = 0.0;   // batch-means half-width

    uint64_t delivered_total() const;
    double equivalent_rounds(int slots_per_round) const;
    double wasteful_fraction() const;
    double ack_loss_fraction() const;
    double multi_iteration_fraction() const;

    // one CSV row (schema in csv_header())
    static std::string csv_header();
    std::string csv_row(const SimConfig& config) const;
};

// Round-driven execution of the atom under the configured ARQ scheme.
// Deterministic in the full config including the seed.
SimStats run(const SimConfig& config);

// Optional per-extraction audit hook: (round, destination node, extraction).
using AuditHook = std::function<void(uint64_t, const std::string&, const Extraction&)>;
SimStats run(const SimConfig& config, const AuditHook& audit);

// (benchmark - actual) / benchmark
double degradation(double actual, double benchmark);
// extra time per delivered packet relative to the benchmark: benchmark/actual - 1
double overhead_metric(double actual, double benchmark);

}  // namespace pncarq
