#include "transgress/errors.hpp"
#include "transgress/forms.hpp"

#include <cmath>
#include <numbers>

namespace transgress {

namespace {

double det_with_point(const Point& x, const Matrix& v) {
    if (x.size() == 3 && v.cols() == 2) {
        const Eigen::Vector3d u = Eigen::Vector3d(x).normalized();
        return u.dot(Eigen::Vector3d(v.col(0)).cross(Eigen::Vector3d(v.col(1))));
    }
    if (x.size() == 4 && v.cols() == 3) {
        Eigen::Matrix4d m;
        m.col(0) = Eigen::Vector4d(x).normalized();
        m.rightCols<3>() = v;
        return m.determinant();
    }
    Matrix m(x.size(), v.cols() + 1);
    m.col(0) = x.normalized();
    m.rightCols(v.cols()) = v;
    return m.determinant();
}

void require(const ManifoldPtr& M, const std::string& id, const std::string& form) {
    if (!M || M->id() != id) throw ConfigError("form '" + form + "' needs manifold " + id);
}

}  // namespace

VolumeForm sphere_area_normalized(ManifoldPtr sphere2) {
    require(sphere2, "sphere2", "sphere_area_normalized");
    const double c = 1.0 / (4.0 * std::numbers::pi);
    return VolumeForm(DifferentialForm(sphere2, 2, [c](const Point& x, const Matrix& v) {
        return c * det_with_point(x, v);
    }, "sphere_area_normalized").declared_closed());
}

VolumeForm su2_biinvariant(ManifoldPtr sphere3) {
    require(sphere3, "sphere3", "su2_biinvariant");
    const double c = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);
    return VolumeForm(DifferentialForm(sphere3, 3, [c](const Point& x, const Matrix& v) {
        return c * det_with_point(x, v);
    }, "su2_biinvariant").declared_closed());
}

VolumeForm torus_dxdy(ManifoldPtr torus) {
    require(torus, "torus2", "torus_dxdy");
    return VolumeForm(DifferentialForm(torus, 2, [](const Point&, const Matrix& v) {
        return v(0, 0) * v(1, 1) - v(1, 0) * v(0, 1);
    }, "torus_dxdy").declared_closed());
}

SmoothMap factor_projection(ManifoldPtr product, ManifoldPtr sphere2, int factor) {
    if (factor != 0 && factor != 1) throw ConfigError("factor_projection: factor must be 0 or 1");
    const int offset = 3 * factor;
    Matrix select = Matrix::Zero(3, 6);
    select.block<3, 3>(0, offset).setIdentity();
    return SmoothMap(
        std::move(product), std::move(sphere2), [offset](const Point& x) { return Point(x.segment(offset, 3)); },
        [select](const Point&) { return select; });
}

VolumeForm product_area(ManifoldPtr sphere2xsphere2) {
    require(sphere2xsphere2, "sphere2xsphere2", "product_area");
    const ManifoldPtr s2 = make_manifold("sphere2");
    const VolumeForm nu = sphere_area_normalized(s2);
    const DifferentialForm first = pullback(factor_projection(sphere2xsphere2, s2, 0), nu);
    const DifferentialForm second = pullback(factor_projection(sphere2xsphere2, s2, 1), nu);
    return VolumeForm(wedge(first, second).renamed("product_area"));
}

VolumeForm make_volume_form(const std::string& id, ManifoldPtr manifold) {
    if (id == "sphere_area_normalized") return sphere_area_normalized(std::move(manifold));
    if (id == "su2_biinvariant") return su2_biinvariant(std::move(manifold));
    if (id == "torus_dxdy") return torus_dxdy(std::move(manifold));
    if (id == "product_area") return product_area(std::move(manifold));
    throw ConfigError("unknown volume form '" + id + "'");
}

}  // namespace transgress
