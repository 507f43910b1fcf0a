#include <algorithm>
#include <sstream>

#include "hidsym/cli.hpp"

namespace hidsym::cli {

namespace {

const char* kFlat2 = R"(chart x y
metric
  x x = 1
  y y = 1
)";

const char* kFlat3 = R"(chart x y z
metric
  x x = 1
  y y = 1
  z z = 1
)";

const char* kMinkowski3 = R"(chart t x y
metric
  t t = 1
  x x = -1
  y y = -1
vector Kt
  t = 1
vector Kx
  x = 1
vector Ky
  y = 1
vector Rtx
  t = x
  x = t
vector Rty
  t = y
  y = t
vector Rxy
  x = y
  y = -x
vector H
  t = t
  x = x
  y = y
vector Ct
  t = (t^2 + x^2 + y^2)/2
  x = t*x
  y = t*y
vector Cx
  t = t*x
  x = (t^2 + x^2 - y^2)/2
  y = x*y
vector Cy
  t = t*y
  x = x*y
  y = (t^2 - x^2 + y^2)/2
)";

const char* kMinkowski4 = R"(chart t x y z
options
  ansatz on
metric
  t t = 1
  x x = -1
  y y = -1
  z z = -1
vector Kt
  t = 1
vector Kx
  x = 1
vector Ky
  y = 1
vector Kz
  z = 1
vector Rtx
  t = x
  x = t
vector Rty
  t = y
  y = t
vector Rtz
  t = z
  z = t
vector Rxy
  x = y
  y = -x
vector Rxz
  x = z
  z = -x
vector Ryz
  y = z
  z = -y
vector H
  t = t
  x = x
  y = y
  z = z
vector Ct
  t = (t^2 + x^2 + y^2 + z^2)/2
  x = t*x
  y = t*y
  z = t*z
vector Cx
  t = t*x
  x = (t^2 + x^2 - y^2 - z^2)/2
  y = x*y
  z = x*z
vector Cy
  t = t*y
  x = x*y
  y = (t^2 - x^2 + y^2 - z^2)/2
  z = y*z
vector Cz
  t = t*z
  x = x*z
  y = y*z
  z = (t^2 - x^2 - y^2 + z^2)/2
reduce Kz via identity
  label gradient KV
  candidate XCt
    t = (t^2 + x^2 + y^2)/2
    x = t*x
    y = t*y
    eta = -t*w/2
  candidate XCx
    t = t*x
    x = (t^2 + x^2 - y^2)/2
    y = x*y
    eta = -x*w/2
  candidate XCy
    t = t*y
    x = x*y
    y = (t^2 - x^2 + y^2)/2
    eta = -y*w/2
  expect typeii XCt XCx XCy
  expect equation
    t t = 1
    x x = -1
    y y = -1
reduce H via hyperspherical
  label gradient HV
  candidate P1
    theta = sinh(theta)*cosh(phi)*cosh(zeta)
    phi = sinh(phi)*cosh(zeta)/cosh(theta)
    zeta = sinh(zeta)/(cosh(theta)*cosh(phi))
  candidate P2
    theta = cosh(theta)
  candidate P3
    theta = sinh(theta)*sinh(phi)
    phi = cosh(phi)/cosh(theta)
  candidate P4
    theta = sinh(theta)*cosh(phi)*sinh(zeta)
    phi = sinh(phi)*sinh(zeta)/cosh(theta)
    zeta = cosh(zeta)/(cosh(theta)*cosh(phi))
  expect typeii none
  expect equation
    theta theta = 1
    phi phi = 1/cosh(theta)^2
    zeta zeta = 1/(cosh(theta)^2*cosh(phi)^2)
    B theta = -2*tanh(theta)
    B phi = -tanh(phi)/cosh(theta)^2
reduce Ct via axial, spckv
  label special CKV
  then inversion, cartesian
  gauge 1/(X^2 + Y^2 + Z^2)
  expect typeii none
)";

const char* kLrs = R"(chart t R z y
param s
metric
  t t = -1
  R R = 1
  z z = exp(s*ln(R))
  y y = exp(s*ln(R))
vector K1
  t = 1
vector K2
  y = 1
vector K3
  z = 1
vector K4
  y = z
  z = -y
vector H
  t = t
  R = R
  z = (2 - s)*z/2
  y = (2 - s)*y/2
reduce K1 via identity
  label gradient KV
  candidate C1
    R = R*z
    z = (2 - s)*(z^2 - y^2)/4 - exp((2 - s)*ln(R))/(2 - s)
    y = (2 - s)*z*y/2
    eta = -z*w/2
  candidate C2
    R = R*y
    z = (2 - s)*z*y/2
    y = (2 - s)*(y^2 - z^2)/4 - exp((2 - s)*ln(R))/(2 - s)
    eta = -y*w/2
  expect typeii C1 C2
  expect equation
    R R = 1
    z z = exp(-s*ln(R))
    y y = exp(-s*ln(R))
    B R = -s/R
reduce H via lrs_hv
  label gradient HV
  expect typeii none
)";

const char* kLrsS2 = R"(chart t R z y
param s = 2
metric
  t t = -1
  R R = 1
  z z = R^2
  y y = R^2
vector K1
  t = 1
vector K2
  y = 1
vector K3
  z = 1
vector K4
  y = z
  z = -y
vector H
  t = t
  R = R
vector Csp
  t = (t^2 + R^2)/2
  R = t*R
reduce K1 via identity
  label gradient KV
  candidate C1
    R = R*z
    z = -ln(R)
    eta = -z*w/2
  candidate C2
    R = R*y
    y = -ln(R)
    eta = -y*w/2
  expect typeii C1 C2
  expect equation
    R R = 1
    z z = 1/R^2
    y y = 1/R^2
    B R = -2/R
reduce H via lrs_hv
  label gradient HV
  expect typeii none
reduce Csp via spckv
  label special CKV
  then inversion
  gauge 1/xbar^2
  candidate Cb1
    xbar = xbar*z
    z = -ln(xbar)
    eta = -z*w/2
  candidate Cb2
    xbar = xbar*y
    y = -ln(xbar)
    eta = -y*w/2
  expect typeii Cb1 Cb2
  expect equation
    xbar xbar = xbar^2
    z z = 1
    y y = 1
    B xbar = -2*xbar
)";

const char* kPetrov3 = R"(chart rho v x y
metric
  rho rho = 3*x/2
  rho v = 1
  x x = v^2/x^3
  y y = v^2/x^3
vector X1
  rho = 1
vector X2
  y = 1
vector X3
  rho = -rho
  v = v
  x = 2*x
  y = 2*y
vector X4
  rho = rho
  v = v
reduce X4 via petrov3
  label HV
  expect typeii none
  expect equation
    sigma sigma = -sigma*(3*x*sigma/2 + 2)
    x x = x^3
    y y = x^3
)";

const char* kDecomposable = R"(chart x y z
options
  ansatz on
metric
  x x = 1 + x^2
  y y = 1 + x^2
  z z = 1
vector Kz
  z = 1
reduce Kz via identity
  label gradient KV
)";

const char* kSpckvM2 = R"(chart t R theta
metric
  t t = -1
  R R = 1
  theta theta = R^2
vector Kt
  t = 1
vector KX
  R = cos(theta)
  theta = -sin(theta)/R
vector KY
  R = sin(theta)
  theta = cos(theta)/R
vector Rot
  theta = 1
vector BX
  t = R*cos(theta)
  R = t*cos(theta)
  theta = -t*sin(theta)/R
vector BY
  t = R*sin(theta)
  R = t*sin(theta)
  theta = t*cos(theta)/R
vector H
  t = t
  R = R
vector CS
  t = (t^2 + R^2)/2
  R = t*R
vector CX
  t = R*t*cos(theta)
  R = (R^2 + t^2)*cos(theta)/2
  theta = (R^2 - t^2)*sin(theta)/(2*R)
vector CY
  t = R*t*sin(theta)
  R = (R^2 + t^2)*sin(theta)/2
  theta = -(R^2 - t^2)*cos(theta)/(2*R)
reduce CS via spckv
  label special CKV
  candidate Rot2
    x = theta*x
    theta = -ln(x)
    eta = theta*w/2
  candidate D2
    x = x*ln(x)
    theta = theta
    eta = ln(x)*w/2
  expect typeii Rot2 D2
  expect equation
    x x = x^2
    theta theta = 1
    V = -1/4
)";

const std::vector<std::string> kSpatial = {"x", "y", "z", "v", "q"};

// e^{2t}(dt^2 - dx^2 - ...) on n dimensions.
std::string frw_text(int n) {
    std::vector<std::string> ys(kSpatial.begin(), kSpatial.begin() + (n - 1));
    std::ostringstream o;
    o << "chart t";
    for (const auto& y : ys) o << ' ' << y;
    o << "\nmetric\n  t t = exp(2*t)\n";
    for (const auto& y : ys) o << "  " << y << ' ' << y << " = -exp(2*t)\n";
    o << "vector K1\n  t = 1\n";
    for (const auto& y : ys) o << "vector K" << y << "\n  " << y << " = 1\n";
    for (std::size_t a = 0; a < ys.size(); ++a)
        for (std::size_t b = a + 1; b < ys.size(); ++b)
            o << "vector R" << ys[a] << ys[b] << "\n  " << ys[a] << " = " << ys[b] << "\n  " << ys[b] << " = -" << ys[a]
              << "\n";
    for (const auto& y : ys) o << "vector C" << y << "\n  t = " << y << "\n  " << y << " = t\n";
    o << "vector D\n  t = t\n";
    for (const auto& y : ys) o << "  " << y << " = " << y << "\n";

    // Reduction by the gradient HV: flat Euclidean Laplace equation.
    o << "reduce K1 via identity\n  label gradient HV\n";
    o << "  candidate Dil\n";
    for (const auto& y : ys) o << "    " << y << " = " << y << "\n";
    std::string r2;
    for (const auto& y : ys) r2 += (r2.empty() ? "" : " + ") + y + "^2";
    for (const auto& ya : ys) {
        o << "  candidate S" << ya << "\n";
        for (const auto& y : ys) {
            if (y == ya)
                o << "    " << y << " = " << y << "^2 - (" << r2 << ")/2\n";
            else
                o << "    " << y << " = " << ya << "*" << y << "\n";
        }
        o << "    eta = (3 - " << n << ")*" << ya << "*w/2\n";
    }
    o << "  expect typeii Dil";
    for (const auto& y : ys) o << " S" << y;
    o << "\n  expect equation\n";
    for (const auto& y : ys) o << "    " << y << ' ' << y << " = -1\n";

    // Reduction by the proper CKV C_x.
    o << "reduce Cx via frw_ckv\n  label proper CKV\n";
    if (n > 3) o << "  gauge 1/R^(1/" << (n - 3) << ")\n";
    o << "  expect typeii none\n  expect equation\n    R R = 4*R\n";
    for (std::size_t k = 1; k < ys.size(); ++k) o << "    " << ys[k] << ' ' << ys[k] << " = -1\n";
    o << "    B R = -4\n    V = " << (2 - n) * (2 - n) << "/4\n";
    return o.str();
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"flat2",  "flat3", "minkowski3", "minkowski4", "lrs", "lrs_s2", "petrov3", "frw", "decomposable_demo",
            "spckv_m2"};
}

bool is_preset(const std::string& name) {
    auto names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::string preset_text(const std::string& name, std::map<std::string, mpq_class>& params) {
    if (name == "flat2") return kFlat2;
    if (name == "flat3") return kFlat3;
    if (name == "minkowski3") return kMinkowski3;
    if (name == "minkowski4") return kMinkowski4;
    if (name == "lrs") return kLrs;
    if (name == "lrs_s2") return kLrsS2;
    if (name == "petrov3") return kPetrov3;
    if (name == "decomposable_demo") return kDecomposable;
    if (name == "spckv_m2") return kSpckvM2;
    if (name == "frw") {
        int n = 4;
        if (auto it = params.find("n"); it != params.end()) {
            if (it->second.get_den() != 1 || it->second < 3 || it->second > 6)
                throw ValidationError("frw: n must be an integer between 3 and 6");
            n = static_cast<int>(it->second.get_num().get_si());
            params.erase(it);
        }
        return frw_text(n);
    }
    throw ValidationError("unknown preset '" + name + "'");
}

}  // namespace hidsym::cli
