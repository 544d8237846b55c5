#include "pncarq/sack.hpp"

#include <stdexcept>

namespace pncarq {

std::string SackFrame::bitmap_string() const {
    std::string s;
    s.reserve(bitmap.size());
    for (bool b : bitmap) s += b ? '1' : '0';
    return s;
}

SackFrame encode_sack(const DeliveredSet& delivered, int window) {
    if (window < 1) throw std::invalid_argument("window must be >= 1");
    SackFrame f;
    f.cum = delivered.frontier();
    f.bitmap.assign(static_cast<size_t>(window) - 1, false);
    for (Seq s : delivered.beyond()) {
        if (s <= f.cum) continue;
        Seq off = s - f.cum;
        if (off >= static_cast<Seq>(window))
            throw std::invalid_argument("delivered packet beyond cum+W-1 violates window contract");
        f.bitmap[static_cast<size_t>(off) - 1] = true;
    }
    return f;
}

std::vector<Seq> decode_sack(const SackFrame& frame) {
    if (frame.window() < 1) throw std::invalid_argument("empty SACK frame");
    std::vector<Seq> out;
    for (size_t k = 0; k < frame.bitmap.size(); ++k)
        if (frame.bitmap[k]) out.push_back(frame.cum + 1 + k);
    return out;
}

std::vector<uint8_t> sack_to_bytes(const SackFrame& frame) {
    std::vector<uint8_t> out;
    uint32_t cum32 = static_cast<uint32_t>(frame.cum & 0xffffffffULL);
    out.push_back(static_cast<uint8_t>(cum32 >> 24));
    out.push_back(static_cast<uint8_t>(cum32 >> 16));
    out.push_back(static_cast<uint8_t>(cum32 >> 8));
    out.push_back(static_cast<uint8_t>(cum32));
    size_t nbytes = (frame.bitmap.size() + 7) / 8;
    out.resize(4 + nbytes, 0);
    for (size_t k = 0; k < frame.bitmap.size(); ++k)
        if (frame.bitmap[k]) out[4 + k / 8] |= static_cast<uint8_t>(0x80u >> (k % 8));
    return out;
}

SackFrame sack_from_bytes(const std::vector<uint8_t>& bytes, int window, Seq ref) {
    if (window < 1) throw std::invalid_argument("window must be >= 1");
    size_t nbytes = (static_cast<size_t>(window) - 1 + 7) / 8;
    if (bytes.size() != 4 + nbytes)
        throw std::invalid_argument("SACK frame length does not match window");
    uint32_t cum32 = (static_cast<uint32_t>(bytes[0]) << 24) |
                     (static_cast<uint32_t>(bytes[1]) << 16) |
                     (static_cast<uint32_t>(bytes[2]) << 8) | static_cast<uint32_t>(bytes[3]);
    // pick the representative congruent to cum32 mod 2^32 in a window around ref
    Seq base = ref > static_cast<Seq>(window) ? ref - window : 0;
    Seq cum = (base & ~0xffffffffULL) | cum32;
    if (cum < base) cum += 0x100000000ULL;
    SackFrame f;
    f.cum = cum;
    f.bitmap.assign(static_cast<size_t>(window) - 1, false);
    for (size_t k = 0; k < f.bitmap.size(); ++k)
        if (bytes[4 + k / 8] & (0x80u >> (k % 8))) f.bitmap[k] = true;
    return f;
}

double ack_frame_bytes(int window, int header_bytes) {
    return static_cast<double>(header_bytes) + static_cast<double>(window) / 8.0;
}

}  // namespace pncarq
