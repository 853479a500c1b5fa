#include "transgress/errors.hpp"
#include "transgress/mesh.hpp"

#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace transgress {

void write_mesh(std::ostream& os, const SimplicialMesh& mesh) {
    const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
    os << "DIM " << mesh.dim() << " AMBIENT " << mesh.ambient_dim() << '\n';
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        os << 'v';
        const auto x = mesh.vertex(i);
        for (int d = 0; d < mesh.ambient_dim(); ++d) os << ' ' << x(d);
        os << '\n';
    }
    for (int s = 0; s < mesh.num_simplices(); ++s) {
        os << "s " << (mesh.sign(s) > 0 ? "+1" : "-1");
        for (int v : mesh.simplex(s)) os << ' ' << v;
        os << '\n';
    }
    os.precision(old_precision);
}

SimplicialMesh read_mesh(std::istream& is) {
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& what) {
        throw MeshFormatError("line " + std::to_string(line_no) + ": " + what);
    };
    SimplicialMesh mesh;
    bool have_header = false;
    while (std::getline(is, line)) {
        ++line_no;
        std::istringstream in(line);
        std::string tag;
        if (!(in >> tag) || tag[0] == '#') continue;
        if (tag == "DIM") {
            int k = -1, D = -1;
            std::string amb;
            if (!(in >> k >> amb >> D) || amb != "AMBIENT" || k < 0 || D < 1) fail("malformed header");
            mesh = SimplicialMesh(k, D);
            have_header = true;
        } else if (tag == "v") {
            if (!have_header) fail("vertex before header");
            Point x(mesh.ambient_dim());
            for (int d = 0; d < mesh.ambient_dim(); ++d)
                if (!(in >> x(d))) fail("vertex needs " + std::to_string(mesh.ambient_dim()) + " coordinates");
            mesh.add_vertex(x);
        } else if (tag == "s") {
            if (!have_header) fail("simplex before header");
            int sign = 0;
            if (!(in >> sign) || (sign != 1 && sign != -1)) fail("simplex sign must be +1 or -1");
            std::vector<int> idx(static_cast<std::size_t>(mesh.dim() + 1));
            for (int& v : idx) {
                if (!(in >> v)) fail("simplex needs " + std::to_string(mesh.dim() + 1) + " indices");
                if (v < 0 || v >= mesh.num_vertices()) fail("vertex index out of range");
            }
            mesh.add_simplex(idx, sign);
        } else {
            fail("unknown record '" + tag + "'");
        }
        std::string extra;
        if (in >> extra) fail("trailing tokens");
    }
    if (!have_header) throw MeshFormatError("missing DIM header");
    return mesh;
}

}  // namespace transgress
