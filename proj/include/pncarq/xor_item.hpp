#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace pncarq {

using FlowId = uint32_t;
using Seq = uint64_t;

// Identity of one native packet: the i-th packet of a flow.
struct NativeId {
    FlowId flow = 0;
    Seq seq = 0;

    friend auto operator<=>(const NativeId&, const NativeId&) = default;
};

// A native packet or an XOR combination of native packets, identified by the
// set of native ids it embeds. XOR of two items is the symmetric difference of
// their id sets; x ^ x is the empty item.
class XorItem {
  public:
    XorItem() = default;
    XorItem(std::initializer_list<NativeId> ids) : ids_(ids) { normalize(); }
    explicit XorItem(std::vector<NativeId> ids) : ids_(std::move(ids)) { normalize(); }

    static XorItem native(FlowId f, Seq s) { return XorItem{{NativeId{f, s}}}; }

    bool empty() const { return ids_.empty(); }
    size_t size() const { return ids_.size(); }
    bool singleton() const { return ids_.size() == 1; }
    const NativeId& front() const { return ids_.front(); }
    const std::vector<NativeId>& ids() const { return ids_; }

    bool contains(const NativeId& n) const {
        return std::binary_search(ids_.begin(), ids_.end(), n);
    }
    bool contains_flow(FlowId f) const {
        return std::any_of(ids_.begin(), ids_.end(), [f](const NativeId& n) { return n.flow == f; });
    }

    XorItem operator^(const XorItem& other) const {
        XorItem out;
        std::set_symmetric_difference(ids_.begin(), ids_.end(), other.ids_.begin(),
                                      other.ids_.end(), std::back_inserter(out.ids_));
        return out;
    }
    XorItem& operator^=(const XorItem& other) { return *this = *this ^ other; }

    friend auto operator<=>(const XorItem&, const XorItem&) = default;

    std::string to_string() const;

  private:
    void normalize() {
        std::sort(ids_.begin(), ids_.end());
        // id appearing twice cancels out
        for (size_t i = 0; i + 1 < ids_.size();) {
            if (ids_[i] == ids_[i + 1]) {
                ids_.erase(ids_.begin() + static_cast<long>(i), ids_.begin() + static_cast<long>(i) + 2);
            } else {
                ++i;
            }
        }
    }

    std::vector<NativeId> ids_;  // sorted, unique
};

struct NativeIdHash {
    size_t operator()(const NativeId& n) const {
        uint64_t x = (static_cast<uint64_t>(n.flow) << 48) ^ n.seq;
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 33;
        return static_cast<size_t>(x);
    }
};

struct XorItemHash {
    size_t operator()(const XorItem& it) const {
        uint64_t h = 0x9e3779b97f4a7c15ULL;
        NativeIdHash nh;
        for (const auto& n : it.ids()) h = (h ^ nh(n)) * 0x100000001b3ULL;
        return static_cast<size_t>(h);
    }
};

}  // namespace pncarq
