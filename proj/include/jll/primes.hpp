#pragma once

#include <cstdint>
#include <vector>

namespace jll {

// Exact prime counting backed by a segmented sieve. The sieve builds lazily
// up to the configured cap; queries beyond the cap throw domain_error.
class PrimeSieve {
  public:
    explicit PrimeSieve(std::uint64_t cap = 100'000'000ull) : cap_(cap) {}

    std::int64_t prime_pi(double x);

    // exact integral of prime_pi over [a, b]:
    //   b*pi(b) - a*pi(a) - sum of primes in (a, b]
    double prime_pi_integral(double a, double b);

    std::uint64_t built_limit() const { return limit_; }
    std::uint64_t cap() const { return cap_; }
    const std::vector<std::uint32_t>& primes() const { return primes_; }

    void ensure(std::uint64_t n);

  private:
    std::uint64_t cap_;
    std::uint64_t limit_ = 0;
    std::vector<std::uint32_t> primes_;
};

}  // namespace jll
