#include "tlcat/diagrams.hpp"

#include <algorithm>
#include <sstream>

namespace tlcat {

namespace {

// position on the boundary circle of point i
inline int circ(int i, int k, int l) { return i < k ? i : k + (l - 1 - (i - k)); }
inline int uncirc(int c, int k, int l) { return c < k ? c : k + (l - 1 - (c - k)); }

}  // namespace

bool is_noncrossing(int k, int l, const std::vector<int>& partners) {
    const int n = k + l;
    if (static_cast<int>(partners.size()) != n || n % 2 != 0) return false;
    for (int i = 0; i < n; ++i) {
        int j = partners[static_cast<size_t>(i)];
        if (j < 0 || j >= n || j == i || partners[static_cast<size_t>(j)] != i) return false;
    }
    std::vector<int> stack;
    for (int c = 0; c < n; ++c) {
        int i = uncirc(c, k, l);
        int pc = circ(partners[static_cast<size_t>(i)], k, l);
        if (pc > c) {
            stack.push_back(c);
        } else {
            if (stack.empty() || stack.back() != pc) return false;
            stack.pop_back();
        }
    }
    return stack.empty();
}

TLDiagram::TLDiagram(int bottom, int top, const std::vector<int>& partners) {
    if (bottom < 0 || top < 0 || bottom + top > kMaxPoints) throw GradingError("diagram size out of range");
    if (!is_noncrossing(bottom, top, partners)) throw std::invalid_argument("not a noncrossing perfect pairing");
    k_ = static_cast<std::uint8_t>(bottom);
    l_ = static_cast<std::uint8_t>(top);
    for (size_t i = 0; i < partners.size(); ++i) p_[i] = static_cast<std::uint8_t>(partners[i]);
}

TLDiagram TLDiagram::identity(int n) {
    if (n < 0 || 2 * n > kMaxPoints) throw GradingError("identity size out of range");
    std::vector<int> p(static_cast<size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        p[static_cast<size_t>(i)] = n + i;
        p[static_cast<size_t>(n + i)] = i;
    }
    return TLDiagram(n, n, p);
}

TLDiagram TLDiagram::cup() { return TLDiagram(0, 2, {1, 0}); }
TLDiagram TLDiagram::cap() { return TLDiagram(2, 0, {1, 0}); }

std::uint64_t TLDiagram::code() const {
    std::uint64_t word = 0;
    const int n = k_ + l_;
    for (int c = 0; c < n; ++c) {
        int i = uncirc(c, k_, l_);
        if (circ(p_[static_cast<size_t>(i)], k_, l_) > c) word |= (std::uint64_t{1} << c);
    }
    return (static_cast<std::uint64_t>(k_) << 48) | (static_cast<std::uint64_t>(l_) << 40) | word;
}

TLDiagram TLDiagram::from_code(std::uint64_t code) {
    TLDiagram d;
    d.k_ = static_cast<std::uint8_t>((code >> 48) & 0xFF);
    d.l_ = static_cast<std::uint8_t>((code >> 40) & 0xFF);
    const int n = d.k_ + d.l_;
    std::array<int, kMaxPoints> stack{};
    int sp = 0;
    for (int c = 0; c < n; ++c) {
        int i = uncirc(c, d.k_, d.l_);
        if ((code >> c) & 1U) {
            stack[static_cast<size_t>(sp++)] = i;
        } else {
            int j = stack[static_cast<size_t>(--sp)];
            d.p_[static_cast<size_t>(i)] = static_cast<std::uint8_t>(j);
            d.p_[static_cast<size_t>(j)] = static_cast<std::uint8_t>(i);
        }
    }
    return d;
}

bool TLDiagram::operator==(const TLDiagram& o) const {
    if (k_ != o.k_ || l_ != o.l_) return false;
    return std::equal(p_.begin(), p_.begin() + k_ + l_, o.p_.begin());
}

int TLDiagram::through_strands() const {
    int t = 0;
    for (int i = 0; i < k_; ++i)
        if (p_[static_cast<size_t>(i)] >= k_) ++t;
    return t;
}

bool TLDiagram::is_identity() const {
    if (k_ != l_) return false;
    for (int i = 0; i < k_; ++i)
        if (p_[static_cast<size_t>(i)] != k_ + i) return false;
    return true;
}

std::vector<int> TLDiagram::partner_list() const {
    std::vector<int> out(static_cast<size_t>(k_ + l_));
    for (int i = 0; i < k_ + l_; ++i) out[static_cast<size_t>(i)] = p_[static_cast<size_t>(i)] + 1;
    return out;
}

std::string TLDiagram::render() const {
    // top row, arcs between top points, through strands, arcs between bottom points
    std::ostringstream os;
    auto label = [&](int i) { return i < k_ ? "b" + std::to_string(i + 1) : "t" + std::to_string(i - k_ + 1); };
    os << "(" << int(k_) << "," << int(l_) << ")";
    std::vector<std::string> cups, caps, thru;
    for (int i = 0; i < k_ + l_; ++i) {
        int j = p_[static_cast<size_t>(i)];
        if (j < i) continue;
        bool ib = i < k_, jb = j < k_;
        std::string s = label(i) + "-" + label(j);
        if (ib && jb) caps.push_back(s);
        else if (!ib && !jb) cups.push_back(s);
        else thru.push_back(s);
    }
    // picture: one column per point, ascii arcs drawn by nesting depth
    auto row = [&](bool isTop) {
        const int n = isTop ? l_ : k_;
        const int off = isTop ? k_ : 0;
        std::string line(static_cast<size_t>(2 * n), ' ');
        for (int a = 0; a < n; ++a) {
            int j = p_[static_cast<size_t>(off + a)];
            bool inner = isTop ? (j >= k_) : (j < k_);
            char c = '|';
            if (inner) c = ((isTop ? j - k_ : j) > a) ? (isTop ? '\\' : '/') : (isTop ? '/' : '\\');
            line[static_cast<size_t>(2 * a)] = c;
        }
        return line;
    };
    os << "\n  top    " << row(true) << "\n  bottom " << row(false);
    auto list = [&](const char* name, const std::vector<std::string>& v) {
        os << "\n  " << name;
        for (const auto& s : v) os << " " << s;
    };
    list("cups   ", cups);
    list("through", thru);
    list("caps   ", caps);
    return os.str();
}

Composition compose_diagrams(const TLDiagram& upper, const TLDiagram& lower) {
    const int s = upper.bottom();
    if (s != lower.top())
        throw GradingError("compose: upper has " + std::to_string(s) + " bottom points, lower has " +
                           std::to_string(lower.top()) + " top points");
    const int k = lower.bottom(), l = upper.top();
    if (k + l > kMaxPoints) throw GradingError("composite too large");
    const auto& L = lower.partners();
    const auto& U = upper.partners();
    std::array<std::uint8_t, kMaxPoints> out{};
    std::array<bool, kMaxPoints> seen{};
    // walk from an outer endpoint; 'inLower' says which diagram we are in
    auto walk = [&](int start, bool inLower) -> int {
        int pos = start;
        for (;;) {
            if (inLower) {
                int p = L[static_cast<size_t>(pos)];
                if (p < k) return p;
                int m = p - k;
                seen[static_cast<size_t>(m)] = true;
                pos = m;
                inLower = false;
            } else {
                int p = U[static_cast<size_t>(pos)];
                if (p >= s) return k + (p - s);
                seen[static_cast<size_t>(p)] = true;
                pos = k + p;
                inLower = true;
            }
        }
    };
    for (int i = 0; i < k; ++i) out[static_cast<size_t>(i)] = static_cast<std::uint8_t>(walk(i, true));
    for (int j = 0; j < l; ++j) out[static_cast<size_t>(k + j)] = static_cast<std::uint8_t>(walk(s + j, false));
    int loops = 0;
    for (int m = 0; m < s; ++m) {
        if (seen[static_cast<size_t>(m)]) continue;
        ++loops;
        int cur = m;
        do {
            seen[static_cast<size_t>(cur)] = true;
            int a = L[static_cast<size_t>(k + cur)] - k;  // through lower to another middle point
            seen[static_cast<size_t>(a)] = true;
            cur = U[static_cast<size_t>(a)];  // through upper
        } while (cur != m);
    }
    return {loops, TLDiagram::raw(k, l, out)};
}

TLDiagram tensor_diagrams(const TLDiagram& a, const TLDiagram& b) {
    const int k = a.bottom() + b.bottom(), l = a.top() + b.top();
    if (k + l > kMaxPoints) throw GradingError("tensor too large");
    std::array<std::uint8_t, kMaxPoints> out{};
    // map point of a / b to index in result
    auto ma = [&](int i) { return i < a.bottom() ? i : k + (i - a.bottom()); };
    auto mb = [&](int i) { return i < b.bottom() ? a.bottom() + i : k + a.top() + (i - b.bottom()); };
    for (int i = 0; i < a.points(); ++i) out[static_cast<size_t>(ma(i))] = static_cast<std::uint8_t>(ma(a.partner(i)));
    for (int i = 0; i < b.points(); ++i) out[static_cast<size_t>(mb(i))] = static_cast<std::uint8_t>(mb(b.partner(i)));
    return TLDiagram::raw(k, l, out);
}

TLDiagram adjoint_diagram(const TLDiagram& d) {
    const int k = d.bottom(), l = d.top();
    std::array<std::uint8_t, kMaxPoints> out{};
    // old top j -> new bottom j ; old bottom i -> new top i
    auto m = [&](int i) { return i < k ? l + i : i - k; };
    for (int i = 0; i < k + l; ++i) out[static_cast<size_t>(m(i))] = static_cast<std::uint8_t>(m(d.partner(i)));
    return TLDiagram::raw(l, k, out);
}

std::uint64_t catalan(int n) {
    std::uint64_t c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * static_cast<std::uint64_t>(i) + 1) / (static_cast<std::uint64_t>(i) + 2);
    return c;
}

std::vector<TLDiagram> enumerate_diagrams(int k, int l) {
    std::vector<TLDiagram> out;
    if (k < 0 || l < 0 || (k + l) % 2 != 0) return out;
    if (k + l > kMaxPoints) throw GradingError("enumeration too large");
    const int n = k + l;
    const std::uint64_t head = (static_cast<std::uint64_t>(k) << 48) | (static_cast<std::uint64_t>(l) << 40);
    out.reserve(static_cast<size_t>(catalan(n / 2)));
    // balanced words in increasing numeric order of the opener mask
    std::vector<int> word;
    word.reserve(static_cast<size_t>(n));
    auto rec = [&](auto&& self, int pos, int open, int depth, std::uint64_t mask) -> void {
        if (pos == n) {
            out.push_back(TLDiagram::from_code(head | mask));
            return;
        }
        if (depth > 0) self(self, pos + 1, open, depth - 1, mask);
        if (open < n / 2) self(self, pos + 1, open + 1, depth + 1, mask | (std::uint64_t{1} << pos));
    };
    rec(rec, 0, 0, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace tlcat
