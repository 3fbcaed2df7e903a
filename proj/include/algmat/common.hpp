/*
   Copyright 2026 The algmat Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ALGMAT_COMMON_HPP
#define ALGMAT_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace algmat {

// Error taxonomy. The CLI maps these onto exit codes, so keep the
// hierarchy flat and explicit.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct parse_error : input_error {
    using input_error::input_error;
};
struct ring_mismatch_error : input_error {
    using input_error::input_error;
};
struct budget_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct verification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Raised when a computed object violates a structural expectation
// (e.g. an elimination ideal that should be principal is not).
struct structure_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic 64-bit generator (splitmix64). std::mt19937_64 is pinned by
// the standard but the distributions are not; rolling our own keeps output
// byte-identical across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n) without modulo bias
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below(0)");
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // uniform integer in [lo, hi]
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // fork a child stream, e.g. one per work item, independent of ordering
    Rng fork(std::uint64_t salt) {
        Rng child(state_ ^ (salt * 0xd6e8feb86659fd93ULL + 0x2545f4914f6cdd1dULL));
        child.next();
        return child;
    }

  private:
    std::uint64_t state_;
};

}  // namespace algmat

#endif  // ALGMAT_COMMON_HPP
