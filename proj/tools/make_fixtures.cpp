// make-fixtures: regenerates the bundled inputs under data/ (usage: make-fixtures <data-dir>).

#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

#include "ahodge/complex.hpp"
#include "ahodge/polytope.hpp"
#include "ahodge/reflexive.hpp"

using namespace ahodge;

namespace {

void write(const std::string& dir, const std::string& name, const nlohmann::json& j)
{
    std::ofstream out(dir + "/" + name + ".json");
    out << j.dump(1) << '\n';
    std::cout << "wrote " << name << ".json\n";
}

nlohmann::json reflexive_complex(const LatticePolytope& xi)
{
    nlohmann::json j = complex_to_json(from_reflexive_polytope(xi));
    j["source_polytope"] = polytope_to_json(xi);
    return j;
}

nlohmann::json segment(long a, long b)
{
    return {{"vertices", {{a}, {b}}}};
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::cerr << "usage: make-fixtures <data-dir>\n";
        return 1;
    }
    const std::string dir = argv[1];
    write(dir, "torus_2d", complex_to_json(cubical_torus(2, 3)));
    write(dir, "torus_3d", complex_to_json(cubical_torus(3, 2)));
    write(dir, "shear_fixture", complex_to_json(shear_fixture()));
    write(dir, "reflexive_square", {{"vertices", {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}}});
    write(dir, "k3_quartic", reflexive_complex(LatticePolytope(
                                 {{-1, -1, -1}, {3, -1, -1}, {-1, 3, -1}, {-1, -1, 3}})));
    write(dir, "quintic", reflexive_complex(LatticePolytope(
                              {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, -1, -1, -1}})));
    write(dir, "conifold_monoid", {{"tau", segment(0, 1)}, {"deltas", {segment(0, 1)}}, {"k", 1}, {"degree_bound", 2}});
    write(dir, "l2_monoid", {{"tau", segment(0, 2)}, {"deltas", {segment(0, 1)}}, {"k", 1}, {"degree_bound", 2}});
    return 0;
}
