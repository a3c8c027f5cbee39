#pragma once
/**
 * @file diagrams.hpp
 * @brief Temperley-Lieb diagrams as noncrossing perfect pairings.
 *
 * Boundary points are 0-based: bottom points 0..k-1 left to right, top
 * points k..k+l-1 left to right. The boundary circle is read bottom left to
 * right, then top right to left; in that order a pairing is noncrossing iff
 * it is a balanced bracket word, which gives a 64-bit canonical code.
 */

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlcat {

struct GradingError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

constexpr int kMaxPoints = 32;

class TLDiagram {
public:
    TLDiagram() = default;
    /// partners in the 0-based convention above; validated
    TLDiagram(int bottom, int top, const std::vector<int>& partners);

    static TLDiagram identity(int n);
    static TLDiagram cup();  // (0,2)
    static TLDiagram cap();  // (2,0)
    static TLDiagram from_code(std::uint64_t code);

    int bottom() const { return k_; }
    int top() const { return l_; }
    int points() const { return k_ + l_; }
    int partner(int i) const { return p_[static_cast<size_t>(i)]; }
    const std::array<std::uint8_t, kMaxPoints>& partners() const { return p_; }
    int through_strands() const;
    bool is_identity() const;

    std::uint64_t code() const;
    bool operator==(const TLDiagram& o) const;
    bool operator!=(const TLDiagram& o) const { return !(*this == o); }
    bool operator<(const TLDiagram& o) const { return code() < o.code(); }

    /// 1-based partner list, the serialization format
    std::vector<int> partner_list() const;
    std::string render() const;

    // unchecked constructor for hot loops
    static TLDiagram raw(int bottom, int top, const std::array<std::uint8_t, kMaxPoints>& p) {
        TLDiagram d;
        d.k_ = static_cast<std::uint8_t>(bottom);
        d.l_ = static_cast<std::uint8_t>(top);
        d.p_ = p;
        return d;
    }

private:
    std::uint8_t k_ = 0, l_ = 0;
    std::array<std::uint8_t, kMaxPoints> p_{};
};

struct Composition {
    int loops = 0;
    TLDiagram result;
};

/// upper is stacked on top of lower; requires upper.bottom() == lower.top()
Composition compose_diagrams(const TLDiagram& upper, const TLDiagram& lower);
TLDiagram tensor_diagrams(const TLDiagram& a, const TLDiagram& b);
TLDiagram adjoint_diagram(const TLDiagram& d);
std::vector<TLDiagram> enumerate_diagrams(int k, int l);
bool is_noncrossing(int k, int l, const std::vector<int>& partners);

std::uint64_t catalan(int n);

}  // namespace tlcat
