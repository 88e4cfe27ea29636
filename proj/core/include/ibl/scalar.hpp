#pragma once

#include <gmpxx.h>

#include <string>

namespace ibl {

using Scalar = mpq_class;

/* A sign in {+1, -1}; kept apart from Scalar so parity bugs surface as type errors. */
class Sign
{
public:
    constexpr Sign() = default;
    static constexpr Sign minus() { return Sign(true); }
    /* (-1)^e */
    static constexpr Sign parity(long e) { return Sign((e & 1) != 0); }

    constexpr bool negative() const { return neg_; }
    constexpr int value() const { return neg_ ? -1 : 1; }

    constexpr Sign operator*(Sign o) const { return Sign(neg_ != o.neg_); }
    constexpr Sign& operator*=(Sign o)
    {
        neg_ = neg_ != o.neg_;
        return *this;
    }
    constexpr Sign operator-() const { return Sign(!neg_); }
    constexpr bool operator==(const Sign&) const = default;

private:
    constexpr explicit Sign(bool neg) : neg_(neg) {}
    bool neg_ = false;
};

inline Scalar operator*(Sign s, const Scalar& x) { return s.negative() ? Scalar(-x) : x; }
inline Scalar operator*(const Scalar& x, Sign s) { return s * x; }

inline Scalar apply(Sign s, Scalar x)
{
    if (s.negative())
        x = -x;
    return x;
}

/* "p/q" or "p"; throws std::invalid_argument on malformed input. */
std::string to_string(const Scalar& x);
Scalar parse_scalar(const std::string& text);

Scalar factorial(int n);
Scalar binomial(int n, int k);

}  // namespace ibl
