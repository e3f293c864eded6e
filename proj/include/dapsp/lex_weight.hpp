#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>

namespace dapsp {

using VertexId = std::uint32_t;
using Weight = std::int64_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

// Bound on path lengths handled by the engine: |length| < 2^62, so the sum of
// two in-range lengths never overflows an int64.
inline constexpr Weight kWeightLimit = Weight{1} << 62;

// Edge weights must satisfy |w| < 2^46. Any path or price on up to 2^15
// vertices then stays below kWeightLimit.
inline constexpr Weight kMaxEdgeWeight = Weight{1} << 46;

// A (length, hops) pair compared lexicographically. Optimal paths under this
// order use the fewest hops among all minimum-length paths, which keeps
// optimal hop-bounded paths simple whenever there is no negative cycle.
//
// INF is strictly greater than every finite value and absorbing under +.
class LexWeight {
  public:
    constexpr LexWeight() = default;
    constexpr LexWeight(Weight length, std::uint32_t hops) : length_(length), hops_(hops), finite_(true) {}

    static constexpr LexWeight inf() {
        LexWeight w;
        w.finite_ = false;
        return w;
    }
    static constexpr LexWeight zero() { return {0, 0}; }
    // A single edge of weight w.
    static constexpr LexWeight edge(Weight w) { return {w, 1}; }

    [[nodiscard]] constexpr bool finite() const { return finite_; }
    [[nodiscard]] constexpr bool is_inf() const { return !finite_; }
    [[nodiscard]] constexpr Weight length() const { return length_; }
    [[nodiscard]] constexpr std::uint32_t hops() const { return hops_; }

    friend constexpr LexWeight operator+(const LexWeight& a, const LexWeight& b) {
        if (!a.finite_ || !b.finite_) {
            return inf();
        }
        return {a.length_ + b.length_, a.hops_ + b.hops_};
    }
    constexpr LexWeight& operator+=(const LexWeight& o) { return *this = *this + o; }

    // Shift the length component only (price-function conversions).
    [[nodiscard]] constexpr LexWeight shifted(Weight delta) const {
        if (!finite_) {
            return *this;
        }
        return {length_ + delta, hops_};
    }

    friend constexpr bool operator==(const LexWeight& a, const LexWeight& b) {
        if (a.finite_ != b.finite_) {
            return false;
        }
        return !a.finite_ || (a.length_ == b.length_ && a.hops_ == b.hops_);
    }
    friend constexpr std::strong_ordering operator<=>(const LexWeight& a, const LexWeight& b) {
        if (!a.finite_ || !b.finite_) {
            return a.finite_ == b.finite_ ? std::strong_ordering::equal
                   : a.finite_           ? std::strong_ordering::less
                                         : std::strong_ordering::greater;
        }
        if (auto c = a.length_ <=> b.length_; c != 0) {
            return c;
        }
        return a.hops_ <=> b.hops_;
    }

    friend std::ostream& operator<<(std::ostream& os, const LexWeight& w) {
        if (!w.finite_) {
            return os << "INF";
        }
        return os << '(' << w.length_ << ',' << w.hops_ << ')';
    }

  private:
    Weight length_ = 0;
    std::uint32_t hops_ = 0;
    bool finite_ = true;
};

inline constexpr LexWeight kInf = LexWeight::inf();

} // namespace dapsp
