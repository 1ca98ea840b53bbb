#include <fstream>
#include <sstream>

#include "ahodge/complex.hpp"

namespace ahodge {

namespace {

using nlohmann::json;

int parse_id(const std::string& key)
{
    std::size_t used = 0;
    int id = 0;
    try {
        id = std::stoi(key, &used);
    } catch (const std::exception&) {
        fail("ParseError", "expected an integer id, got \"" + key + "\"");
    }
    require(used == key.size(), "ParseError", "expected an integer id, got \"" + key + "\"");
    return id;
}

int get_int(const json& j, const char* what)
{
    require(j.is_number_integer(), "ParseError", std::string(what) + " must be an integer");
    return j.get<int>();
}

IntVector get_vector(const json& j, const char* what)
{
    require(j.is_array(), "ParseError", std::string(what) + " must be an array");
    IntVector v;
    for (const auto& x : j) {
        require(x.is_number_integer(), "ParseError", std::string(what) + " entries must be integers");
        v.emplace_back(x.get<long long>());
    }
    return v;
}

std::vector<int> get_ids(const json& j, const char* what)
{
    require(j.is_array(), "ParseError", std::string(what) + " must be an array");
    std::vector<int> v;
    for (const auto& x : j) v.push_back(get_int(x, what));
    return v;
}

json vec_json(const IntVector& v)
{
    json a = json::array();
    for (const auto& x : v) {
        require(x >= INT64_MIN && x <= INT64_MAX, "RangeError", "value exceeds int64");
        a.push_back(x.convert_to<long long>());
    }
    return a;
}

}  // namespace

IntegralAffineComplex complex_from_json(const json& j)
{
    require(j.is_object(), "ParseError", "complex must be a JSON object");
    for (const char* key : {"dim", "cells", "maximal_geometry", "charts"})
        require(j.contains(key), "ParseError", std::string("missing field \"") + key + "\"");
    IntegralAffineComplex c;
    c.n = get_int(j["dim"], "dim");
    require(j["cells"].is_array(), "ParseError", "cells must be an array");
    for (const auto& cj : j["cells"]) {
        require(cj.is_object(), "ParseError", "cell must be an object");
        for (const char* key : {"id", "dim", "vertices", "faces"})
            require(cj.contains(key), "ParseError", std::string("cell missing field \"") + key + "\"");
        Cell cell;
        cell.id = get_int(cj["id"], "cell id");
        cell.dim = get_int(cj["dim"], "cell dim");
        cell.vertices = get_ids(cj["vertices"], "cell vertices");
        cell.faces = get_ids(cj["faces"], "cell faces");
        c.cells.push_back(cell);
    }
    require(j["maximal_geometry"].is_object(), "ParseError", "maximal_geometry must be an object");
    for (const auto& [sk, sj] : j["maximal_geometry"].items()) {
        require(sj.is_object() && sj.contains("vertex_coords") && sj["vertex_coords"].is_object(), "ParseError",
                "maximal_geometry entries need a vertex_coords object");
        for (const auto& [vk, vj] : sj["vertex_coords"].items())
            c.vertex_coords[parse_id(sk)][parse_id(vk)] = get_vector(vj, "vertex coordinates");
    }
    require(j["charts"].is_array(), "ParseError", "charts must be an array");
    for (const auto& ch : j["charts"]) {
        require(ch.is_object() && ch.contains("vertex") && ch.contains("cell") && ch.contains("matrix"), "ParseError",
                "chart needs vertex, cell and matrix");
        require(ch["matrix"].is_array(), "ParseError", "chart matrix must be an array of rows");
        std::vector<IntVector> rows;
        for (const auto& r : ch["matrix"]) rows.push_back(get_vector(r, "chart row"));
        IntMatrix a;
        try {
            a = IntMatrix::from_rows(rows);
        } catch (const Error&) {
            fail("ParseError", "chart matrix rows have different lengths");
        }
        auto key = std::make_pair(get_int(ch["vertex"], "chart vertex"), get_int(ch["cell"], "chart cell"));
        require(c.charts.emplace(key, a).second, "ParseError", "duplicate chart for one (vertex, cell) pair");
    }
    if (j.contains("phi") && !j["phi"].is_null()) {
        require(j["phi"].is_object(), "ParseError", "phi must be an object");
        for (const auto& [vk, list] : j["phi"].items()) {
            require(list.is_array(), "ParseError", "phi entries must be arrays");
            for (const auto& e : list) {
                require(e.is_object() && e.contains("cell") && e.contains("functional"), "ParseError",
                        "phi entry needs cell and functional");
                c.phi.functionals[parse_id(vk)][get_int(e["cell"], "phi cell")] = get_vector(e["functional"], "phi functional");
            }
        }
    }
    try {
        c.index();
    } catch (const Error&) {
        // left for validate() to report
    }
    return c;
}

json complex_to_json(const IntegralAffineComplex& c)
{
    json j;
    j["dim"] = c.n;
    json cells = json::array();
    for (const auto& cell : c.cells)
        cells.push_back({{"id", cell.id}, {"dim", cell.dim}, {"vertices", cell.vertices}, {"faces", cell.faces}});
    j["cells"] = cells;
    json geo = json::object();
    for (const auto& [s, coords] : c.vertex_coords) {
        json vc = json::object();
        for (const auto& [v, x] : coords) vc[std::to_string(v)] = vec_json(x);
        geo[std::to_string(s)] = {{"vertex_coords", vc}};
    }
    j["maximal_geometry"] = geo;
    json charts = json::array();
    for (const auto& [key, a] : c.charts) {
        json rows = json::array();
        for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(vec_json(a.row(i)));
        charts.push_back({{"vertex", key.first}, {"cell", key.second}, {"matrix", rows}});
    }
    j["charts"] = charts;
    if (!c.phi.empty()) {
        json phi = json::object();
        for (const auto& [v, per] : c.phi.functionals) {
            json list = json::array();
            for (const auto& [s, f] : per) list.push_back({{"cell", s}, {"functional", vec_json(f)}});
            phi[std::to_string(v)] = list;
        }
        j["phi"] = phi;
    }
    return j;
}

IntegralAffineComplex load_complex(const std::string& path)
{
    std::ifstream in(path);
    require(bool(in), "ParseError", "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail("ParseError", std::string("malformed JSON in ") + path + ": " + e.what());
    }
    try {
        return complex_from_json(j);
    } catch (const json::exception& e) {
        fail("ParseError", std::string("unexpected JSON shape: ") + e.what());
    }
}

}  // namespace ahodge
