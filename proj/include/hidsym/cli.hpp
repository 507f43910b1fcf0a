#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hidsym/classify.hpp"

namespace hidsym::cli {

using sym::Expr;

// Exit status 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct VectorSpec {
    std::string name;
    std::vector<Expr> xi;
    int line = 0;
};

struct CandidateSpec {
    std::string name;
    std::map<std::string, Expr> components;  // by reduced coordinate
    std::optional<Expr> eta;
    int line = 0;
};

struct ExpectedEquation {
    std::map<std::pair<std::string, std::string>, Expr> A;
    std::map<std::string, Expr> B;
    Expr V;
    int line = 0;
};

struct ReduceSpec {
    std::string label;
    std::string symmetry;
    std::vector<std::string> via;
    std::vector<std::string> then;
    std::optional<Expr> mu;
    std::optional<Expr> gauge;
    std::vector<CandidateSpec> candidates;
    std::optional<std::vector<std::string>> expect_typeii;
    std::optional<ExpectedEquation> expect_equation;
    int line = 0;
};

struct ParamSpec {
    std::string name;
    std::optional<mpq_class> value;
};

enum class AnsatzMode { Auto, On, Off };

struct Options {
    int degree = 2;
    int samples = 12;
    std::uint64_t seed = 20240601;
    AnsatzMode ansatz = AnsatzMode::Auto;
};

struct AnalysisInput {
    std::string name;
    geom::Chart chart;
    std::vector<ParamSpec> params;
    sym::ExprMatrix metric;
    std::optional<Expr> potential;  // Klein-Gordon when set
    std::vector<VectorSpec> vectors;
    std::vector<red::CoordinateMap> maps;
    std::vector<ReduceSpec> reductions;
    Options options;
};

// Line-oriented input:
//   chart t x y z
//   param s [= 2]
//   potential <expr>
//   options
//     degree 2 | samples 12 | seed 7 | ansatz auto|on|off
//   metric
//     t t = 1
//   vector <name>
//     t = <expr>
//   map <name> ... (see reduction.hpp)
//   reduce <vector> via <map>[,<map>...]
//     label <text> | mu <expr> | then <map>[,...] | gauge <expr>
//     candidate <name>
//       <coord> = <expr> | eta = <expr in w>
//     expect typeii <names...>|none
//     expect equation
//       <coord> <coord> = <expr> | B <coord> = <expr> | V = <expr>
// Block contents are indented. Errors carry "<source>:<line>:".
AnalysisInput parse_input(const std::string& text, const std::string& source = "input");

// Overrides declared parameters; unknown names are a validation error.
void apply_params(AnalysisInput& in, const std::map<std::string, mpq_class>& values);

std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
// Structural parameters (the dimension of frw) are consumed here and removed from `params`.
std::string preset_text(const std::string& name, std::map<std::string, mpq_class>& params);

struct Report {
    nlohmann::ordered_json json;
    int exit_code = 0;  // 0 ok, 3 internal inconsistency (partial report)

    std::string json_text() const;
    std::string text() const;
};

// Runs the whole pipeline. Throws ValidationError for bad input; internal
// inconsistencies end the run with exit_code 3 and an "error" entry.
Report run_analysis(const AnalysisInput& in);

}  // namespace hidsym::cli
