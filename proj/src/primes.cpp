#include "jll/primes.hpp"

#include <algorithm>
#include <cmath>

#include "jll/errors.hpp"

namespace jll {

namespace {

std::vector<std::uint32_t> base_primes(std::uint64_t limit) {
    std::vector<bool> comp(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            out.push_back(static_cast<std::uint32_t>(i));
            for (std::uint64_t j = i * i; j <= limit; j += i)
                comp[j] = true;
        }
    }
    return out;
}

}  // namespace

void PrimeSieve::ensure(std::uint64_t n) {
    if (n <= limit_)
        return;
    if (n > cap_)
        throw domain_error("prime sieve: requested x exceeds the configured limit");
    std::uint64_t target = std::max<std::uint64_t>(n, std::max<std::uint64_t>(2 * limit_, 1u << 20));
    target = std::min(target, cap_);

    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(target))) + 2;
    auto base = base_primes(root);

    primes_.clear();
    constexpr std::uint64_t kSeg = 1u << 21;
    std::vector<bool> seg;
    for (std::uint64_t lo = 2; lo <= target; lo += kSeg) {
        std::uint64_t hi = std::min(lo + kSeg - 1, target);
        seg.assign(hi - lo + 1, false);
        for (std::uint32_t p : base) {
            std::uint64_t pp = p;
            if (pp * pp > hi)
                break;
            std::uint64_t start = std::max(pp * pp, ((lo + pp - 1) / pp) * pp);
            for (std::uint64_t j = start; j <= hi; j += pp)
                seg[j - lo] = true;
        }
        for (std::uint64_t v = lo; v <= hi; ++v)
            if (!seg[v - lo])
                primes_.push_back(static_cast<std::uint32_t>(v));
    }
    limit_ = target;
}

std::int64_t PrimeSieve::prime_pi(double x) {
    if (x < 0.0)
        throw domain_error("prime_pi: x must be >= 0");
    if (x < 2.0)
        return 0;
    std::uint64_t n = static_cast<std::uint64_t>(x);
    ensure(n + 1);
    auto it = std::upper_bound(primes_.begin(), primes_.end(), n);
    return static_cast<std::int64_t>(it - primes_.begin());
}

double PrimeSieve::prime_pi_integral(double a, double b) {
    if (b < a)
        throw domain_error("prime_pi_integral: b < a");
    double pb = static_cast<double>(prime_pi(b));
    double pa = static_cast<double>(prime_pi(a));
    auto lo = std::upper_bound(primes_.begin(), primes_.end(),
                               static_cast<std::uint64_t>(std::max(0.0, a)));
    auto hi = std::upper_bound(primes_.begin(), primes_.end(),
                               static_cast<std::uint64_t>(b));
    double sum = 0.0;
    for (auto it = lo; it != hi; ++it)
        sum += static_cast<double>(*it);
    return b * pb - a * pa - sum;
}

}  // namespace jll
