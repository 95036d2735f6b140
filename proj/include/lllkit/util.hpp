#ifndef LLLKIT_UTIL_HPP
#define LLLKIT_UTIL_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace lllkit {

// Invariant or precondition violations surface as typed errors.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Enumeration / size caps are never truncated silently.
struct CapExceededError : std::runtime_error {
    explicit CapExceededError(const std::string& msg) : std::runtime_error(msg) {}
};

using u128 = unsigned __int128;

// Exact nonnegative rational on 128-bit words. Large enough for every exact
// identity the toolkit asserts (denominators up to ~1e38); overflow is an
// error, never a wrap.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(u128 num, u128 den) : num_(num), den_(den) {
        if (den_ == 0) throw ValidationError("Rational: zero denominator");
        normalize();
    }

    static Rational from_count(std::uint64_t satisfying, u128 total) {
        return Rational(satisfying, total);
    }

    u128 num() const { return num_; }
    u128 den() const { return den_; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    Rational operator*(const Rational& o) const {
        // cross-reduce before multiplying to keep products in range
        u128 a = num_, b = den_, c = o.num_, d = o.den_;
        u128 g1 = gcd(a, d), g2 = gcd(c, b);
        a /= g1; d /= g1; c /= g2; b /= g2;
        return Rational(checked_mul(a, c), checked_mul(b, d));
    }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string to_string() const {
        return u128_to_string(num_) + "/" + u128_to_string(den_);
    }

    static u128 checked_mul(u128 a, u128 b) {
        if (a != 0 && b > static_cast<u128>(-1) / a)
            throw CapExceededError("Rational: 128-bit overflow in multiplication");
        return a * b;
    }

    static u128 checked_pow(u128 base, unsigned exp) {
        u128 r = 1;
        for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
        return r;
    }

    static std::string u128_to_string(u128 v) {
        if (v == 0) return "0";
        std::string s;
        while (v > 0) {
            s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
            v /= 10;
        }
        return s;
    }

private:
    static u128 gcd(u128 a, u128 b) {
        while (b != 0) {
            u128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    void normalize() {
        if (num_ == 0) { den_ = 1; return; }
        u128 g = gcd(num_, den_);
        num_ /= g;
        den_ /= g;
    }
    u128 num_, den_;
};

// Unbiased uniform draw in [0, n) from a 64-bit engine, by rejection.
// mt19937_64 output is standard-specified, so results are stable across
// platforms and builds.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw ValidationError("uniform_below: empty range");
    if (n == 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % n);
    for (;;) {
        std::uint64_t x = rng();
        if (x < limit) return x % n;
    }
}

// Runs f(begin, end) over chunks of [0, n). Caller is responsible for making
// writes disjoint so results do not depend on the thread count.
template <class F>
void parallel_chunks(std::size_t n, int threads, F&& f) {
    if (threads <= 1 || n < 2) {
        if (n > 0) f(std::size_t{0}, n);
        return;
    }
    std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    std::size_t chunk = (n + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &f] { f(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

} // namespace lllkit

#endif
