#pragma once

#include <memory>
#include <string>

#include "jll/grid.hpp"
#include "jll/ladder.hpp"
#include "jll/primes.hpp"
#include "jll/zeros.hpp"

namespace jll {

struct LabConfig {
    GridSpec grid;
    LadderConfig ladder;
    std::string cache_path;  // binary sample cache; empty = in-memory only
    int threads = 1;
    std::uint64_t sieve_cap = 100'000'000ull;
};

// Shared state for a verification session: the sample grid, the prime sieve,
// the zero table, and a ladder bound to them.
class Lab {
  public:
    explicit Lab(LabConfig cfg = {})
        : cfg_(std::move(cfg)),
          grid_(cfg_.grid, cfg_.threads),
          primes_(cfg_.sieve_cap),
          ladder_(grid_, primes_, cfg_.ladder) {
        if (!cfg_.cache_path.empty()) {
            if (is_csv(cfg_.cache_path))
                grid_.import_csv(cfg_.cache_path);
            else
                grid_.load(cfg_.cache_path);
        }
    }

    const LabConfig& config() const { return cfg_; }
    SampleGrid& grid() { return grid_; }
    PrimeSieve& primes() { return primes_; }
    ZeroTable& zeros() { return zeros_; }
    Ladder& ladder() { return ladder_; }

    void save_cache() {
        if (cfg_.cache_path.empty())
            return;
        if (is_csv(cfg_.cache_path))
            grid_.export_csv(cfg_.cache_path);
        else
            grid_.save(cfg_.cache_path);
    }

    static bool is_csv(const std::string& path) {
        return path.size() > 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
    }

  private:
    LabConfig cfg_;
    SampleGrid grid_;
    PrimeSieve primes_;
    ZeroTable zeros_;
    Ladder ladder_;
};

}  // namespace jll
