#pragma once
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bvk/error.hpp"

namespace bvk {

enum class Parity : int { even = 0, odd = 1 };

inline Parity parity_of_gh(int gh) { return (gh % 2) ? Parity::odd : Parity::even; }
inline Parity operator+(Parity a, Parity b) {
    return Parity((int(a) + int(b)) % 2);
}

// A named generator of a graded polynomial context. Parity is the ghost
// number mod 2 throughout.
struct Generator {
    std::string name;
    int gh = 0;

    Parity parity() const { return parity_of_gh(gh); }
    bool odd() const { return parity() == Parity::odd; }
    bool operator==(const Generator& o) const { return name == o.name && gh == o.gh; }
};

// Ordered generator list; monomial normal forms are relative to this order.
// Immutable and cheap to copy (shared body).
class Context {
  public:
    Context() = default;
    explicit Context(std::vector<Generator> gens, std::string label = "");

    std::size_t size() const { return body_->gens.size(); }
    const Generator& gen(std::size_t i) const { return body_->gens[i]; }
    const std::vector<Generator>& gens() const { return body_->gens; }
    const std::string& label() const { return body_->label; }

    bool has(const std::string& name) const;
    std::size_t index_of(const std::string& name) const;
    std::size_t index_of(const Generator& g) const;

    // Structural equality (same generator sequence).
    bool operator==(const Context& o) const;
    bool operator!=(const Context& o) const { return !(*this == o); }

    // Context with, for each generator z, an extra generator "d<z>" of
    // ghost number gh(z)+1 appended after the originals.
    Context doubled() const;

    // Base + extra generators appended.
    Context extended(const std::vector<Generator>& extra, const std::string& label = "") const;

    std::string describe() const;

  private:
    struct Body {
        std::vector<Generator> gens;
        std::map<std::string, std::size_t> index;
        std::string label;
    };
    std::shared_ptr<const Body> body_ = empty_body();
    static std::shared_ptr<const Body> empty_body();
};

void require_same_context(const Context& a, const Context& b, const char* op);

} // namespace bvk
