#ifndef LMG_HALF_INTEGER_HPP
#define LMG_HALF_INTEGER_HPP

#include <compare>
#include <ostream>
#include <string>

namespace lmg
{

/// Exact integer or half-integer, stored as twice its value. Used for spin S and magnetic number M.
class HalfInteger
{
public:
    constexpr HalfInteger() noexcept = default;
    constexpr explicit HalfInteger(int integer) noexcept : twice_(2 * integer) {}

    static constexpr HalfInteger from_twice(int twice) noexcept
    {
        HalfInteger out;
        out.twice_ = twice;
        return out;
    }

    [[nodiscard]] constexpr int twice() const noexcept { return twice_; }
    [[nodiscard]] constexpr double value() const noexcept { return 0.5 * twice_; }
    [[nodiscard]] constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }

    constexpr auto operator<=>(const HalfInteger &) const noexcept = default;

    constexpr HalfInteger operator-() const noexcept { return from_twice(-twice_); }
    friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) noexcept
    {
        return from_twice(a.twice_ + b.twice_);
    }
    friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) noexcept
    {
        return from_twice(a.twice_ - b.twice_);
    }
    friend constexpr HalfInteger operator+(HalfInteger a, int b) noexcept { return from_twice(a.twice_ + 2 * b); }
    friend constexpr HalfInteger operator-(HalfInteger a, int b) noexcept { return from_twice(a.twice_ - 2 * b); }

    [[nodiscard]] std::string to_string() const
    {
        if (is_integer()) {
            return std::to_string(twice_ / 2);
        }
        return std::to_string(twice_) + "/2";
    }

    friend std::ostream &operator<<(std::ostream &os, HalfInteger x) { return os << x.to_string(); }

private:
    int twice_ = 0;
};

} // namespace lmg

#endif
