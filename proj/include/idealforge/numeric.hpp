#pragma once

// Arbitrary-precision naturals and block-binary arithmetic.
//
// A positive integer k has a unique block representation
// 1_{q_b} 0_{l_b} ... 1_{q_1} 0_{l_1}: maximal runs of ones (q_i >= 1)
// separated by runs of zeros (l_i >= 1 except the trailing run l_1 >= 0).
// bl(k) = b, the number of one-runs.

#include <algorithm>
#include <bit>
#include <cctype>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "idealforge/error.hpp"

namespace idealforge {

using BigInt = boost::multiprecision::cpp_int;

class Nat {
public:
    Nat() = default;

    template <std::integral T>
    Nat(T v) {  // NOLINT(google-explicit-constructor): literals read naturally
        if constexpr (std::is_signed_v<T>) {
            if (v < 0) throw DomainError("Nat: negative value " + std::to_string(v));
        }
        value_ = v;
    }

    static Nat from_bigint(BigInt v) {
        if (v.sign() < 0) throw DomainError("Nat: negative value " + v.str());
        Nat n;
        n.value_ = std::move(v);
        return n;
    }

    static Nat pow2(std::size_t exponent) {
        Nat n;
        boost::multiprecision::bit_set(n.value_, static_cast<unsigned>(exponent));
        return n;
    }

    // Decimal digits only.
    static Nat parse_decimal(std::string_view text) {
        if (text.empty()) throw DomainError("Nat: empty decimal literal");
        BigInt v;
        for (char c : text) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw DomainError("Nat: bad decimal literal '" + std::string(text) + "'");
            v = v * 10 + (c - '0');
        }
        return from_bigint(std::move(v));
    }

    const BigInt& big() const noexcept { return value_; }

    bool is_zero() const { return value_.is_zero(); }

    std::size_t bit_length() const {
        return is_zero() ? 0 : boost::multiprecision::msb(value_) + 1;
    }

    // Bit i, 0-indexed from the least significant end.
    bool bit(std::size_t i) const {
        return boost::multiprecision::bit_test(value_, static_cast<unsigned>(i));
    }

    std::size_t trailing_zeros() const {
        if (is_zero()) throw DomainError("trailing_zeros(0) is undefined");
        return boost::multiprecision::lsb(value_);
    }

    std::size_t popcount() const {
        std::size_t total = 0;
        const auto& backend = value_.backend();
        for (std::size_t i = 0; i < backend.size(); ++i)
            total += static_cast<std::size_t>(std::popcount(backend.limbs()[i]));
        return total;
    }

    bool is_power_of_two() const { return !is_zero() && popcount() == 1; }

    std::uint64_t to_u64() const {
        if (bit_length() > 64) throw DomainError("Nat: value does not fit in 64 bits");
        return value_.convert_to<std::uint64_t>();
    }

    std::string str() const { return value_.str(); }

    friend Nat operator+(const Nat& a, const Nat& b) { return from_raw(a.value_ + b.value_); }
    friend Nat operator*(const Nat& a, const Nat& b) { return from_raw(a.value_ * b.value_); }

    // Throws DomainError when b > a.
    friend Nat operator-(const Nat& a, const Nat& b) {
        if (b.value_ > a.value_)
            throw DomainError("Nat subtraction underflow: " + a.str() + " - " + b.str());
        return from_raw(a.value_ - b.value_);
    }

    friend Nat operator<<(const Nat& a, std::size_t s) {
        return from_raw(a.value_ << static_cast<unsigned>(s));
    }
    friend Nat operator>>(const Nat& a, std::size_t s) {
        return from_raw(a.value_ >> static_cast<unsigned>(s));
    }
    friend Nat operator&(const Nat& a, const Nat& b) { return from_raw(a.value_ & b.value_); }

    Nat& operator+=(const Nat& o) { value_ += o.value_; return *this; }
    Nat& operator-=(const Nat& o) { return *this = *this - o; }

    friend bool operator==(const Nat& a, const Nat& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Nat& a, const Nat& b) {
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (a.value_ > b.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    static Nat from_raw(BigInt v) {
        Nat n;
        n.value_ = std::move(v);
        return n;
    }

    BigInt value_;
};

inline std::ostream& operator<<(std::ostream& os, const Nat& n) { return os << n.str(); }

// Binary string without leading zeros ("0" for zero).
inline std::string to_binary(const Nat& k) {
    if (k.is_zero()) return "0";
    std::string s(k.bit_length(), '0');
    for (std::size_t i = 0; i < s.size(); ++i)
        if (k.bit(i)) s[s.size() - 1 - i] = '1';
    return s;
}

struct Block {
    std::size_t ones = 0;   // q_i >= 1
    std::size_t zeros = 0;  // l_i

    friend bool operator==(const Block&, const Block&) = default;
};

// Most significant block first.
struct BlockRep {
    std::vector<Block> blocks;

    std::size_t count() const noexcept { return blocks.size(); }

    std::string binary() const {
        std::string s;
        for (const auto& b : blocks) {
            s.append(b.ones, '1');
            s.append(b.zeros, '0');
        }
        return s;
    }

    Nat value() const {
        BigInt v;
        for (const auto& b : blocks) {
            v <<= static_cast<unsigned>(b.ones);
            v += (BigInt(1) << static_cast<unsigned>(b.ones)) - 1;
            v <<= static_cast<unsigned>(b.zeros);
        }
        return Nat::from_bigint(std::move(v));
    }
};

inline BlockRep block_rep(const Nat& k) {
    if (k.is_zero()) throw DomainError("block representation of 0 is undefined");
    BlockRep rep;
    std::size_t i = k.bit_length();
    while (i > 0) {
        Block b;
        while (i > 0 && k.bit(i - 1)) { ++b.ones; --i; }
        while (i > 0 && !k.bit(i - 1)) { ++b.zeros; --i; }
        rep.blocks.push_back(b);
    }
    return rep;
}

// bl(k): counts bits that are set with a clear bit (or nothing) below them.
inline std::size_t block_count(const Nat& k) {
    if (k.is_zero()) throw DomainError("block count of 0 is undefined");
    BigInt run_starts = k.big() - (k.big() & (k.big() << 1));
    return Nat::from_bigint(std::move(run_starts)).popcount();
}

// ceil(log2(n)) for n >= 1.
inline std::size_t ceil_log2(std::size_t n) {
    if (n == 0) throw DomainError("ceil_log2(0) is undefined");
    return n == 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1));
}

// ceil(log2(bl(k)+1)); the optimum term count is an integer at least
// log2(bl(k)+1).
inline std::size_t lower_bound_terms(const Nat& k) {
    return ceil_log2(block_count(k) + 1);
}

namespace detail {
using Float = boost::multiprecision::cpp_bin_float_50;

inline Float log2_of(const Nat& k) {
    using boost::multiprecision::log;
    return log(Float(k.big())) / log(Float(2));
}
}  // namespace detail

// Floating estimate of log2(k) for reporting.
inline double log2_approx(const Nat& k) {
    if (k.is_zero()) throw DomainError("log2(0) is undefined");
    return detail::log2_of(k).convert_to<double>();
}

// floor(20 * sqrt(x) * log2(x)) with x = log2(k), for k >= 3.
//
// Evaluated with 50 significant digits. When the real value sits within
// 1e-30 of an integer it is taken to be that integer; this only happens
// when x is an exact power of four (e.g. k = 2^256 gives exactly 2560).
inline std::optional<std::size_t> sqrt_bound(const Nat& k) {
    if (k < Nat(3)) return std::nullopt;
    using boost::multiprecision::floor;
    using boost::multiprecision::log;
    using boost::multiprecision::round;
    using boost::multiprecision::sqrt;
    using detail::Float;
    const Float x = detail::log2_of(k);
    const Float real = 20 * sqrt(x) * (log(x) / log(Float(2)));
    const Float nearest = round(real);
    const Float value = abs(real - nearest) < Float("1e-30") ? nearest : floor(real);
    return value.convert_to<std::size_t>();
}

struct UpperBounds {
    std::size_t block_bound = 0;               // bl(k) + 1
    std::optional<std::size_t> sqrt_bound;     // absent for k < 3

    // The smaller of the available bounds.
    std::size_t active() const {
        return sqrt_bound ? std::min(block_bound, *sqrt_bound) : block_bound;
    }
    bool sqrt_is_active() const { return sqrt_bound && *sqrt_bound < block_bound; }
};

inline UpperBounds upper_bound_terms(const Nat& k) {
    return UpperBounds{block_count(k) + 1, sqrt_bound(k)};
}

enum class Sign : int { Plus = 1, Minus = -1 };

struct SignedPower {
    Sign sign = Sign::Plus;
    std::size_t exponent = 0;

    friend bool operator==(const SignedPower&, const SignedPower&) = default;
};

inline BigInt evaluate(std::span<const SignedPower> terms) {
    BigInt sum;
    for (const auto& t : terms) {
        BigInt p = BigInt(1) << static_cast<unsigned>(t.exponent);
        if (t.sign == Sign::Plus) sum += p; else sum -= p;
    }
    return sum;
}

struct SignedSumBound {
    Nat value;
    std::size_t bound = 0;   // number of terms t
    std::size_t blocks = 0;  // bl(value), always <= bound
};

// Evaluates sum (+-)2^{y_i} and checks that its block count does not exceed
// the number of terms. Rejects sums that are not positive.
inline SignedSumBound bl_of_signed_sum(std::span<const SignedPower> terms) {
    BigInt v = evaluate(terms);
    if (v.sign() <= 0)
        throw DomainError("signed power sum must be positive, got " + v.str());
    SignedSumBound r{Nat::from_bigint(std::move(v)), terms.size(), 0};
    r.blocks = block_count(r.value);
    if (r.blocks > r.bound)
        throw InvariantViolation("bl(" + r.value.str() + ") = " + std::to_string(r.blocks) +
                                 " exceeds term count " + std::to_string(r.bound));
    return r;
}

// Uniform among naturals with exactly `bits` bits (top bit set).
template <class Rng>
Nat random_nat(std::size_t bits, Rng& rng) {
    if (bits == 0) throw DomainError("random_nat needs at least one bit");
    BigInt v;
    for (std::size_t done = 0; done < bits; done += 32) {
        v <<= 32;
        v += static_cast<std::uint32_t>(rng());
    }
    v >>= static_cast<unsigned>((bits + 31) / 32 * 32 - bits);
    boost::multiprecision::bit_set(v, static_cast<unsigned>(bits - 1));
    return Nat::from_bigint(std::move(v));
}

// Parses `decimal | 0xHEX | 2^a | 2^a+b | 2^a-b`.
inline Nat parse_nat_expression(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    const std::string original(text);
    if (text.empty()) throw DomainError("empty number expression");

    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        BigInt v;
        for (char c : text.substr(2)) {
            int d;
            if (c >= '0' && c <= '9') d = c - '0';
            else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
            else throw DomainError("bad hex literal '" + original + "'");
            v = v * 16 + d;
        }
        return Nat::from_bigint(std::move(v));
    }

    if (text.size() > 2 && text.substr(0, 2) == "2^") {
        text.remove_prefix(2);
        std::size_t op = text.find_first_of("+-");
        std::string_view exp_part = trim(text.substr(0, op));
        Nat exponent = Nat::parse_decimal(exp_part);
        if (exponent.bit_length() > 32) throw DomainError("exponent too large in '" + original + "'");
        Nat base = Nat::pow2(exponent.to_u64());
        if (op == std::string_view::npos) return base;
        Nat offset = Nat::parse_decimal(trim(text.substr(op + 1)));
        if (text[op] == '+') return base + offset;
        if (offset > base) throw DomainError("expression '" + original + "' is negative");
        return base - offset;
    }

    return Nat::parse_decimal(text);
}

}  // namespace idealforge
