#include "pbwk/algebra_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pbwk {

namespace {

using nlohmann::json;

json parse_document(std::string_view document) {
    try {
        return json::parse(document);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

const json& field(const json& object, const char* name) {
    if (!object.is_object() || !object.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
    return object.at(name);
}

std::string string_field(const json& object, const char* name) {
    const json& v = field(object, name);
    if (!v.is_string()) throw InputError(std::string("field \"") + name + "\" must be a string");
    return v.get<std::string>();
}

Scalar coefficient(const RingSpec& ring, const json& v) {
    if (v.is_number_integer()) return Scalar(ring, mpq_class(std::to_string(v.get<long long>())));
    if (v.is_string()) return parse_scalar(ring, v.get<std::string>());
    throw InputError("coefficient must be a string or an integer");
}

std::size_t basis_index(const SuperLieAlgebra& alg, const std::string& label) {
    auto i = alg.index_of(label);
    if (!i) throw InputError("unknown basis label \"" + label + "\"");
    return *i;
}

std::size_t basis_index(const std::vector<BasisElement>& basis, const std::string& label) {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].label == label) return i;
    throw InputError("unknown basis label \"" + label + "\"");
}

SparseVector sparse_value(const RingSpec& ring, const std::vector<BasisElement>& basis, const json& value) {
    if (!value.is_array()) throw InputError("\"value\" must be an array");
    std::vector<Scalar> dense(basis.size(), Scalar::zero(ring));
    for (const auto& term : value) dense[basis_index(basis, string_field(term, "basis"))] += coefficient(ring, field(term, "coeff"));
    SparseVector out;
    for (std::size_t i = 0; i < dense.size(); ++i)
        if (!dense[i].is_zero()) out.emplace_back(i, dense[i]);
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

AlgebraPtr algebra_from_json(std::string_view document, std::optional<RingSpec> ring) {
    const json doc = parse_document(document);
    if (!ring) ring = doc.contains("ring") ? RingSpec::parse(string_field(doc, "ring")) : default_ring();

    std::vector<BasisElement> basis;
    const json& b = field(doc, "basis");
    if (!b.is_array() || b.empty()) throw InputError("\"basis\" must be a nonempty array");
    for (const auto& e : b) {
        BasisElement be{string_field(e, "label"), 0};
        if (e.contains("parity")) {
            const json& p = e.at("parity");
            if (!p.is_number_integer() || (p.get<int>() != 0 && p.get<int>() != 1))
                throw InputError("parity must be 0 or 1");
            be.parity = p.get<int>();
        }
        if (be.label.empty()) throw InputError("empty basis label");
        for (const auto& other : basis)
            if (other.label == be.label) throw InputError("duplicate basis label \"" + be.label + "\"");
        basis.push_back(std::move(be));
    }

    std::vector<BracketEntry> table;
    if (doc.contains("brackets")) {
        const json& br = doc.at("brackets");
        if (!br.is_array()) throw InputError("\"brackets\" must be an array");
        for (const auto& entry : br) {
            BracketEntry be;
            be.left = basis_index(basis, string_field(entry, "left"));
            be.right = basis_index(basis, string_field(entry, "right"));
            be.value = sparse_value(*ring, basis, field(entry, "value"));
            table.push_back(std::move(be));
        }
    }
    try {
        return SuperLieAlgebra::from_upper_table(*ring, std::move(basis), table);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

std::string algebra_to_json(const SuperLieAlgebra& algebra) {
    json doc;
    doc["ring"] = algebra.ring().to_string();
    doc["basis"] = json::array();
    for (const auto& b : algebra.basis()) doc["basis"].push_back({{"label", b.label}, {"parity", b.parity}});
    doc["brackets"] = json::array();
    for (const auto& entry : algebra.upper_entries()) {
        json value = json::array();
        for (const auto& [k, c] : entry.value) value.push_back({{"basis", algebra.label(k)}, {"coeff", c.to_string()}});
        doc["brackets"].push_back(
            {{"left", algebra.label(entry.left)}, {"right", algebra.label(entry.right)}, {"value", value}});
    }
    return doc.dump(2) + "\n";
}

AlgebraPtr load_algebra(const std::string& source, std::optional<RingSpec> ring) {
    constexpr std::string_view prefix = "builtin:";
    if (source.starts_with(prefix)) {
        const RingSpec r = ring ? *ring : default_ring();
        const std::string name = source.substr(prefix.size());
        if (name == "heisenberg") return heisenberg(r);
        if (name == "sl2") return sl2(r);
        if (name == "super") return super_example(r);
        if (name == "odd-square") return odd_square_example(r);
        if (name == "odd-line") return odd_line(r);
        throw InputError("unknown built-in algebra \"" + name + "\"");
    }
    return algebra_from_json(read_file(source), ring);
}

LieMorphism morphism_from_json(std::string_view document, const AlgebraPtr& source, const AlgebraPtr& target) {
    const json doc = parse_document(document);
    std::vector<LieElement> images(source->dim(), target->zero());
    const json& list = field(doc, "images");
    if (!list.is_array()) throw InputError("\"images\" must be an array");
    for (const auto& entry : list) {
        const std::size_t i = basis_index(*source, string_field(entry, "basis"));
        LieElement image = target->zero();
        for (const auto& [k, c] : sparse_value(target->ring(), target->basis(), field(entry, "value"))) image.add_to(k, c);
        images[i] = image;
    }
    try {
        return LieMorphism(source, target, std::move(images));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

LieMorphism load_morphism(const std::filesystem::path& path, const AlgebraPtr& source) {
    const std::string text = read_file(path);
    const json doc = parse_document(text);
    AlgebraPtr target = source;
    if (doc.contains("target"))
        target = load_algebra((path.parent_path() / string_field(doc, "target")).string(), source->ring());
    return morphism_from_json(text, source, target);
}

}  // namespace pbwk
