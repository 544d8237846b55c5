#pragma once

#include <cstdint>
#include <vector>

#include "pncarq/sack.hpp"

namespace pncarq {

enum class SlotStatus : uint8_t { unsent, sent_unacked, acked };

struct SendDecision {
    Seq seq = 0;
    bool boundary_wrap = false;  // cursor passed the right boundary to get here
};

// Selective-repeat sender window. The left boundary sn_min is the smallest
// unacknowledged sequence number; offset 0 is never acked.
class WindowState {
  public:
    explicit WindowState(int window);

    int window() const { return window_; }
    Seq sn_min() const { return sn_min_; }
    int cursor() const { return cursor_; }
    SlotStatus status(int offset) const { return status_.at(static_cast<size_t>(offset)); }

    // Lowest-sequence non-acked packet at or after the cursor; wraps to offset
    // 0 (flagging a boundary wrap back) when the cursor passes the right
    // boundary. Marks the packet sent and advances the cursor past it.
    SendDecision next_to_send();

    // Marks receptions per the frame, slides the left boundary to frame.cum
    // and wraps the cursor back to offset 0 (ACK wrap back). Stale frames
    // (cum below sn_min) are ignored so reapplication is idempotent and
    // sn_min is non-decreasing. Throws on frames that acknowledge packets the
    // window could never have sent.
    void apply_sack(const SackFrame& frame);

    bool acked(Seq s) const {
        if (s < sn_min_ || s >= sn_min_ + static_cast<Seq>(window_)) return false;
        return status_[static_cast<size_t>(s - sn_min_)] == SlotStatus::acked;
    }

  private:
    int window_;
    Seq sn_min_ = 0;
    int cursor_ = 0;
    std::vector<SlotStatus> status_;
};

// Reception counter for ACK scheduling: one "reception" is a coded packet
// containing a native destined for this destination, received from the relay
// (overhearing does not count). Returns true when an ACK falls due; the
// counter then resets.
class AckCounter {
  public:
    explicit AckCounter(int every) : every_(every) {}

    bool record_reception(bool coded_received) {
        if (!coded_received) return false;
        if (++count_ >= every_) {
            count_ = 0;
            return true;
        }
        return false;
    }

    int count() const { return count_; }
    int every() const { return every_; }

  private:
    int every_;
    int count_ = 0;
};

}  // namespace pncarq
