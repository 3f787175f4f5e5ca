#pragma once

#include <stdexcept>

namespace retbeam {

/// Boundary-condition kind: the derivative order j fixed at t = 1,
/// so the right-end condition reads u^(j)(1) = lambda * B[u].
class BcKind {
public:
    explicit BcKind(int j) : j_(j) {
        if (j < 0 || j > 3) {
            throw std::invalid_argument("BcKind: j must be one of 0,1,2,3");
        }
    }

    [[nodiscard]] int j() const noexcept { return j_; }

    friend bool operator==(BcKind a, BcKind b) noexcept { return a.j_ == b.j_; }

private:
    int j_;
};

} // namespace retbeam
