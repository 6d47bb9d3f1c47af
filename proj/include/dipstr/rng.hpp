#pragma once

#include <cstdint>

namespace dipstr {

// Counter-based generator: every (seed, stream) pair is an independent
// deterministic sequence, so sample s of a run can be regenerated in
// isolation and reductions stay reproducible under any parallel split.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double next_unit();      // [0, 1)
  double next_unit_pos();  // (0, 1)
  double next_normal();
  double next_gamma(double shape);  // shape > 0, unit scale

 private:
  std::uint64_t state_;
};

}  // namespace dipstr
