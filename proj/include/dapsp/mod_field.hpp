#pragma once

// Arithmetic modulo a prime below 2^62 and dense matrices over that field.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "dapsp/errors.hpp"

namespace dapsp {

namespace detail {

__extension__ using uint128 = unsigned __int128;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

} // namespace detail

// Deterministic Miller-Rabin; these bases are exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) {
            return n == p;
        }
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::pow_mod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = detail::mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

// 2^50 - 27.
inline constexpr std::uint64_t kDefaultPrime = 1125899906842597ULL;

class PrimeField {
  public:
    explicit PrimeField(std::uint64_t p = kDefaultPrime) : p_(p) {
        if (p >= (1ULL << 62) || !is_prime(p)) {
            throw ParameterError("modulus " + std::to_string(p) + " is not a prime below 2^62");
        }
    }

    // A prime from [2^49, 2^50): random odd candidates until one passes the
    // primality test.
    static PrimeField from_seed(std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        for (;;) {
            const std::uint64_t candidate = ((1ULL << 49) + (rng() & ((1ULL << 49) - 1))) | 1ULL;
            if (is_prime(candidate)) {
                return PrimeField(candidate);
            }
        }
    }

    [[nodiscard]] std::uint64_t p() const { return p_; }

    [[nodiscard]] std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        const std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    [[nodiscard]] std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
    [[nodiscard]] std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
    [[nodiscard]] std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return detail::mul_mod(a, b, p_); }

    [[nodiscard]] std::uint64_t inv(std::uint64_t a) const {
        if (a % p_ == 0) {
            throw std::domain_error("inverse of zero in prime field");
        }
        return detail::pow_mod(a, p_ - 2, p_);
    }

    // Residue of a signed integer.
    [[nodiscard]] std::uint64_t from_int(std::int64_t x) const {
        const std::int64_t r = x % static_cast<std::int64_t>(p_);
        return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
    }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

  private:
    std::uint64_t p_;
};

class ModMatrix {
  public:
    ModMatrix() = default;
    ModMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static ModMatrix identity(std::size_t n) {
        ModMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    std::uint64_t& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::uint64_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    [[nodiscard]] const std::uint64_t* row(std::size_t i) const { return a_.data() + i * cols_; }

    friend bool operator==(const ModMatrix&, const ModMatrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint64_t> a_;
};

inline ModMatrix multiply(const ModMatrix& a, const ModMatrix& b, const PrimeField& f) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matrix shapes do not match");
    }
    ModMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const std::uint64_t x = a(i, k);
            if (x == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
            }
        }
    }
    return c;
}

// Gauss-Jordan inverse; throws if the matrix is singular mod p.
inline ModMatrix gauss_inverse(ModMatrix a, const PrimeField& f) {
    const std::size_t n = a.rows();
    if (a.cols() != n) {
        throw std::invalid_argument("inverse of a non-square matrix");
    }
    ModMatrix inv = ModMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == 0) {
            ++pivot;
        }
        if (pivot == n) {
            throw std::domain_error("matrix is singular modulo p");
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        const std::uint64_t scale = f.inv(a(col, col));
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) = f.mul(a(col, j), scale);
            inv(col, j) = f.mul(inv(col, j), scale);
        }
        for (std::size_t r = 0; r < n; ++r) {
            const std::uint64_t factor = a(r, col);
            if (r == col || factor == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) = f.sub(a(r, j), f.mul(factor, a(col, j)));
                inv(r, j) = f.sub(inv(r, j), f.mul(factor, inv(col, j)));
            }
        }
    }
    return inv;
}

} // namespace dapsp
