#ifndef PII_VERIFY_HPP
#define PII_VERIFY_HPP

// The acceptance self-test: each criterion returns a pass flag plus the
// measured quantities, so the CLI can emit a machine-readable report and the
// test suite can print one line per criterion.

#include <string>
#include <utility>
#include <vector>

namespace pii::verify {

struct Criterion {
  std::string id;      // "AC-1" ...
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;  // human-readable summary
  std::vector<std::pair<std::string, double>> metrics;
};

enum class Level { Fast, Full };

// Fast runs AC-1..AC-6; Full adds the oracle comparisons AC-7..AC-12.
std::vector<Criterion> run(Level level);

}  // namespace pii::verify

#endif
