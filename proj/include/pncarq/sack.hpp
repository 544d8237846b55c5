#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "pncarq/xor_item.hpp"

namespace pncarq {

// Receiver-side delivered set: everything below `frontier` plus the
// out-of-order seqs beyond it.
class DeliveredSet {
  public:
    bool contains(Seq s) const { return s < frontier_ || beyond_.count(s) > 0; }

    // returns false if s was already present
    bool insert(Seq s) {
        if (contains(s)) return false;
        beyond_.insert(s);
        while (!beyond_.empty() && *beyond_.begin() == frontier_) {
            beyond_.erase(beyond_.begin());
            ++frontier_;
        }
        return true;
    }

    Seq frontier() const { return frontier_; }
    const std::set<Seq>& beyond() const { return beyond_; }

  private:
    Seq frontier_ = 0;         // smallest seq not yet delivered
    std::set<Seq> beyond_;     // delivered seqs > frontier
};

// Selective acknowledgment: cum = smallest sequence number not received;
// bitmap has exactly W-1 bits, bit k (1-based) set iff cum+k was received.
struct SackFrame {
    Seq cum = 0;
    std::vector<bool> bitmap;  // size W-1

    int window() const { return static_cast<int>(bitmap.size()) + 1; }
    std::string bitmap_string() const;

    friend bool operator==(const SackFrame&, const SackFrame&) = default;
};

SackFrame encode_sack(const DeliveredSet& delivered, int window);

// Received seqs the frame reports beyond cum (everything below cum is
// implicitly received). Throws std::invalid_argument on an empty-window frame.
std::vector<Seq> decode_sack(const SackFrame& frame);

// Wire form: 4-byte big-endian cum (mod 2^32), then ceil((W-1)/8) bytes;
// the bit for cum+1 is the MSB of the first byte; pad bits are zero.
std::vector<uint8_t> sack_to_bytes(const SackFrame& frame);
// `window` fixes the bitmap width; `ref` disambiguates the 32-bit wire cum
// (the reconstructed cum is the value congruent mod 2^32 nearest at-or-above
// a window-relative anchor below ref).
SackFrame sack_from_bytes(const std::vector<uint8_t>& bytes, int window, Seq ref);

// Airtime size charged for one ACK frame, in bytes: header K plus W/8.
double ack_frame_bytes(int window, int header_bytes);

}  // namespace pncarq
