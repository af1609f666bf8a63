#ifndef RAINBOW_STRIP_HPP
#define RAINBOW_STRIP_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/point_set.hpp"

namespace rainbow {

enum class StripCase { WAbsent, WSameColor, WOtherColor };

// Closed strip between the line through x and y and its parallel through z.
// Indices refer to the input set; colors are dense.
struct Strip {
    std::size_t x, y, z;
    std::optional<std::size_t> w;  // second input point on the z line
    int i1, i2, i3;
    StripCase kind = StripCase::WAbsent;
};

struct StripTrace {
    std::size_t events = 0;
    std::size_t pivot_changes = 0;
    int shear_attempts = 0;
    char stop = '?';  // 'A': last point left through line 1, 'B': line 2, 'C': line 1 met color i3
    // Set when invariant checking was requested and some event violated one.
    std::vector<std::string> invariant_failures;
};

// Requires k >= 3. With check_invariants every event re-verifies the sweep
// invariants by a full scan (quadratic, for tests).
Strip find_strip(const ColoredPointSet& S, StripTrace* trace = nullptr, bool check_invariants = false);

// Independent scan of the strip properties; returns one message per failure.
std::vector<std::string> check_strip(const ColoredPointSet& S, const Strip& strip);

}  // namespace rainbow

#endif
