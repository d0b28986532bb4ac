#include "grext/io.hpp"

#include <string>

namespace grext {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw InvalidInput("description must be a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw InvalidInput(std::string("missing field '") + key + "'");
    return *it;
}

template <class T>
T get_as(const Json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("field '") + key + "': " + e.what());
    }
}

std::vector<Combo> read_products(const Json& j, std::size_t rows, std::size_t cols, std::uint32_t p) {
    std::vector<Combo> table(rows * cols);
    const Json& mul = field(j, "mul");
    if (!mul.is_array()) throw InvalidInput("field 'mul': expected an array");
    for (const auto& e : mul) {
        if (!e.is_array() || e.size() != 3 || !e[2].is_array())
            throw InvalidInput("field 'mul': entries must be [i, j, [[k, c], ...]]");
        std::size_t a, b;
        try {
            a = e[0].get<std::size_t>();
            b = e[1].get<std::size_t>();
        } catch (const nlohmann::json::exception&) {
            throw InvalidInput("field 'mul': indices must be nonnegative integers");
        }
        if (a >= rows || b >= cols) throw InvalidInput("field 'mul': index out of range");
        auto& c = table[a * cols + b];
        if (!c.empty()) throw InvalidInput("field 'mul': duplicate entry");
        for (const auto& t : e[2]) {
            if (!t.is_array() || t.size() != 2) throw InvalidInput("field 'mul': terms must be [k, c]");
            std::int64_t k = t[0].get<std::int64_t>(), v = t[1].get<std::int64_t>();
            if (k < 0) throw InvalidInput("field 'mul': negative index");
            std::int64_t r = v % static_cast<std::int64_t>(p);
            if (r < 0) r += p;
            if (r) c.push_back({static_cast<std::uint32_t>(k), static_cast<Residue>(r)});
        }
    }
    return table;
}

Json write_products(const std::vector<Combo>& table, std::size_t cols) {
    Json mul = Json::array();
    for (std::size_t k = 0; k < table.size(); ++k) {
        if (table[k].empty()) continue;
        Json terms = Json::array();
        for (const auto& t : table[k]) terms.push_back({t.index, t.coeff});
        mul.push_back({k / cols, k % cols, terms});
    }
    return mul;
}

}  // namespace

AlgebraData algebra_data_from_json(const Json& j) {
    AlgebraData d;
    d.p = get_as<std::uint32_t>(j, "p");
    PrimeField f(d.p);
    d.names = get_as<std::vector<std::string>>(j, "basis");
    d.unit = j.contains("unit") ? get_as<std::size_t>(j, "unit") : 0;
    d.table = read_products(j, d.names.size(), d.names.size(), d.p);
    for (auto v : get_as<std::vector<std::int64_t>>(j, "aug")) d.aug.push_back(f.from_int(v));
    if (j.contains("filtration")) {
        std::vector<std::vector<FpVector>> levels;
        for (const auto& lvl : get_as<std::vector<std::vector<std::vector<std::int64_t>>>>(j, "filtration")) {
            std::vector<FpVector> vs;
            for (const auto& v : lvl) {
                FpVector x;
                for (auto c : v) x.push_back(f.from_int(c));
                vs.push_back(std::move(x));
            }
            levels.push_back(std::move(vs));
        }
        d.filtration = std::move(levels);
    } else {
        d.weights = get_as<std::vector<int>>(j, "weights");
    }
    return d;
}

Json to_json(const AlgebraData& d) {
    Json j;
    j["p"] = d.p;
    j["basis"] = d.names;
    j["unit"] = d.unit;
    j["mul"] = write_products(d.table, d.names.size());
    j["aug"] = d.aug;
    j["weights"] = d.weights;
    return j;
}

Json to_json(const FilteredAlgebra& a) { return to_json(a.data()); }

FilteredAlgebra algebra_from_json(const Json& j) { return FilteredAlgebra::make(algebra_data_from_json(j)); }

ModuleData module_data_from_json(const Json& j) {
    ModuleData d;
    d.p = get_as<std::uint32_t>(j, "p");
    d.names = get_as<std::vector<std::string>>(j, "basis");
    d.weights = get_as<std::vector<int>>(j, "weights");
    // Rows are algebra basis indices; the count is checked against the algebra later.
    std::size_t rows = 0;
    for (const auto& e : field(j, "mul"))
        if (e.is_array() && !e.empty() && e[0].is_number_unsigned()) rows = std::max(rows, e[0].get<std::size_t>() + 1);
    if (j.contains("algebra_dim")) rows = get_as<std::size_t>(j, "algebra_dim");
    d.table = read_products(j, rows, d.names.size(), d.p);
    return d;
}

Json to_json(const ModuleData& d) {
    Json j;
    j["p"] = d.p;
    j["basis"] = d.names;
    j["algebra_dim"] = d.names.empty() ? 0 : d.table.size() / d.names.size();
    j["mul"] = write_products(d.table, d.names.size());
    j["weights"] = d.weights;
    return j;
}

Json to_json(const FilteredModule& m) { return to_json(m.data()); }

FilteredModule module_from_json(const FilteredAlgebra& a, const Json& j) {
    ModuleData d = module_data_from_json(j);
    if (!j.contains("algebra_dim")) {
        // Pad to the algebra dimension; missing rows are zero actions.
        d.table.resize(a.dim() * d.names.size());
    }
    return FilteredModule::make(a, d);
}

Json to_json(const FpMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(std::vector<Residue>(m.row(r).begin(), m.row(r).end()));
    return {{"p", m.p()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

}  // namespace grext
