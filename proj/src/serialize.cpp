#include "wdrew/serialize.hpp"

#include <fstream>
#include <sstream>

namespace wdrew {

Json value_to_json(const Value& v) {
    switch (v.kind()) {
    case Value::Kind::Int: return Json{{"int", v.int_value().str()}};
    case Value::Kind::Given: return Json{{"given", v.given_set()}, {"index", v.given_index()}};
    case Value::Kind::Pair:
        return Json{{"first", value_to_json(v.first())}, {"second", value_to_json(v.second())}};
    case Value::Kind::Set: {
        Json elems = Json::array();
        for (const auto& e : v.elems()) elems.push_back(value_to_json(e));
        return Json{{"set", std::move(elems)}};
    }
    }
    throw error("unreachable");
}

Value value_from_json(const Json& j) {
    if (j.contains("int")) return Value::integer(Int(j.at("int").get<std::string>()));
    if (j.contains("given"))
        return Value::given(j.at("given").get<std::string>(), j.at("index").get<int>());
    if (j.contains("first"))
        return Value::pair(value_from_json(j.at("first")), value_from_json(j.at("second")));
    if (j.contains("set")) {
        std::vector<Value> elems;
        for (const auto& e : j.at("set")) elems.push_back(value_from_json(e));
        return Value::set(std::move(elems));
    }
    throw error("malformed value in JSON");
}

Json interpretation_to_json(const Interpretation& m) {
    Json a = Json::array();
    for (const auto& [name, v] : m.assignment)
        a.push_back(Json{{"var", name}, {"value", value_to_json(v)}, {"shows", v.str()}});
    return a;
}

Interpretation interpretation_from_json(const Json& j) {
    Interpretation m;
    for (const auto& e : j)
        m.assignment.emplace_back(e.at("var").get<std::string>(), value_from_json(e.at("value")));
    return m;
}

Json bounds_to_json(const Bounds& b) {
    return Json{{"int_lo", b.int_lo},
                {"int_hi", b.int_hi},
                {"given_size", b.given_size},
                {"max_nesting", b.max_nesting},
                {"budget", b.budget}};
}

Bounds bounds_from_json(const Json& j) {
    Bounds b;
    b.int_lo = j.at("int_lo").get<long long>();
    b.int_hi = j.at("int_hi").get<long long>();
    b.given_size = j.at("given_size").get<int>();
    b.max_nesting = j.at("max_nesting").get<int>();
    b.budget = j.at("budget").get<std::uint64_t>();
    return b;
}

std::string content_hash(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path);
    out << content;
    if (!out) throw io_error("write failed for " + path);
}

} // namespace wdrew
