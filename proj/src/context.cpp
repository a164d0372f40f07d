#include "bvk/context.hpp"

#include <sstream>

namespace bvk {

std::shared_ptr<const Context::Body> Context::empty_body() {
    static const auto body = std::make_shared<const Body>();
    return body;
}

Context::Context(std::vector<Generator> gens, std::string label) {
    auto body = std::make_shared<Body>();
    body->gens = std::move(gens);
    body->label = std::move(label);
    for (std::size_t i = 0; i < body->gens.size(); ++i) {
        auto [it, inserted] = body->index.emplace(body->gens[i].name, i);
        require(inserted, "duplicate generator name '" + body->gens[i].name + "'");
        require(!body->gens[i].name.empty(), "empty generator name");
    }
    body_ = std::move(body);
}

bool Context::has(const std::string& name) const {
    return body_->index.count(name) != 0;
}

std::size_t Context::index_of(const std::string& name) const {
    auto it = body_->index.find(name);
    if (it == body_->index.end())
        fail("unknown generator '" + name + "' in context " + describe());
    return it->second;
}

std::size_t Context::index_of(const Generator& g) const {
    std::size_t i = index_of(g.name);
    require(gen(i) == g, "generator '" + g.name + "' disagrees with context entry");
    return i;
}

bool Context::operator==(const Context& o) const {
    if (body_ == o.body_) return true;
    return body_->gens == o.body_->gens;
}

Context Context::doubled() const {
    std::vector<Generator> gens = body_->gens;
    for (const auto& g : body_->gens) {
        Generator dg{"d" + g.name, g.gh + 1};
        require(!has(dg.name), "name collision while doubling: '" + dg.name + "'");
        gens.push_back(dg);
    }
    return Context(std::move(gens), body_->label.empty() ? "" : body_->label + "+d");
}

Context Context::extended(const std::vector<Generator>& extra, const std::string& label) const {
    std::vector<Generator> gens = body_->gens;
    gens.insert(gens.end(), extra.begin(), extra.end());
    return Context(std::move(gens), label.empty() ? body_->label : label);
}

std::string Context::describe() const {
    std::ostringstream os;
    if (!body_->label.empty()) os << body_->label;
    os << "[";
    for (std::size_t i = 0; i < size(); ++i) {
        if (i) os << ",";
        os << gen(i).name;
        if (i >= 7 && size() > 9) {
            os << ",...(" << size() << " gens)";
            break;
        }
    }
    os << "]";
    return os.str();
}

void require_same_context(const Context& a, const Context& b, const char* op) {
    if (a != b)
        fail(std::string(op) + ": context mismatch between " + a.describe() + " and " +
             b.describe());
}

} // namespace bvk
