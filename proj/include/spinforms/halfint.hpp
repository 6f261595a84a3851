#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "spinforms/scalar.hpp"

namespace spinforms {

/// Half-integer (j, m, n labels). Stored as twice the value.
class HalfInt {
public:
    constexpr HalfInt() = default;
    constexpr HalfInt(int whole) : twice_(2 * whole) {}
    static constexpr HalfInt from_twice(int t) {
        HalfInt h;
        h.twice_ = t;
        return h;
    }

    constexpr int twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    double value() const { return twice_ / 2.0; }
    BigRat rat() const { return BigRat(twice_, 2); }
    Scalar scalar() const { return Scalar(rat()); }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
    constexpr HalfInt operator-() const { return from_twice(-twice_); }
    friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice_ == b.twice_; }
    friend constexpr bool operator!=(HalfInt a, HalfInt b) { return a.twice_ != b.twice_; }
    friend constexpr bool operator<(HalfInt a, HalfInt b) { return a.twice_ < b.twice_; }
    friend constexpr bool operator<=(HalfInt a, HalfInt b) { return a.twice_ <= b.twice_; }
    friend constexpr bool operator>(HalfInt a, HalfInt b) { return a.twice_ > b.twice_; }
    friend constexpr bool operator>=(HalfInt a, HalfInt b) { return a.twice_ >= b.twice_; }

    HalfInt abs() const { return from_twice(twice_ < 0 ? -twice_ : twice_); }

    std::string to_string() const {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

    /// Accepts "p/2" or a plain integer string.
    static std::optional<HalfInt> parse(const std::string& s) {
        if (s.empty()) return std::nullopt;
        std::size_t slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                std::size_t used = 0;
                int v = std::stoi(s, &used);
                if (used != s.size()) return std::nullopt;
                return HalfInt(v);
            }
            std::size_t used = 0;
            int num = std::stoi(s.substr(0, slash), &used);
            if (used != slash) return std::nullopt;
            if (s.substr(slash + 1) != "2") return std::nullopt;
            return from_twice(num);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

private:
    int twice_ = 0;
};

}  // namespace spinforms
