#include "pncarq/window.hpp"

#include <stdexcept>

namespace pncarq {

WindowState::WindowState(int window) : window_(window) {
    if (window < 1) throw std::invalid_argument("window must be >= 1");
    status_.assign(static_cast<size_t>(window), SlotStatus::unsent);
}

SendDecision WindowState::next_to_send() {
    SendDecision d;
    int i = cursor_;
    while (i < window_ && status_[static_cast<size_t>(i)] == SlotStatus::acked) ++i;
    if (i >= window_) {
        d.boundary_wrap = true;
        i = 0;
        while (status_[static_cast<size_t>(i)] == SlotStatus::acked) ++i;  // offset 0 is never acked
    }
    status_[static_cast<size_t>(i)] = SlotStatus::sent_unacked;
    cursor_ = i + 1;
    d.seq = sn_min_ + static_cast<Seq>(i);
    return d;
}

void WindowState::apply_sack(const SackFrame& frame) {
    if (frame.window() != window_)
        throw std::invalid_argument("SACK bitmap width does not match window");
    if (frame.cum < sn_min_) return;  // stale
    if (frame.cum > sn_min_ + static_cast<Seq>(window_))
        throw std::runtime_error("protocol desync: cum beyond the window");

    Seq shift = frame.cum - sn_min_;
    if (shift > 0) {
        size_t keep = static_cast<size_t>(window_) - static_cast<size_t>(shift);
        for (size_t i = 0; i < keep; ++i) status_[i] = status_[i + static_cast<size_t>(shift)];
        for (size_t i = keep; i < status_.size(); ++i) status_[i] = SlotStatus::unsent;
        sn_min_ = frame.cum;
    }
    for (size_t k = 0; k < frame.bitmap.size(); ++k) {
        if (!frame.bitmap[k]) continue;
        Seq s = frame.cum + 1 + k;
        size_t off = static_cast<size_t>(s - sn_min_);
        if (status_[off] == SlotStatus::unsent)
            throw std::runtime_error("protocol desync: ack for a never-sent packet");
        status_[off] = SlotStatus::acked;
    }
    cursor_ = 0;  // ACK wrap back
}

}  // namespace pncarq
