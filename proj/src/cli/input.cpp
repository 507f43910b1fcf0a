#include <algorithm>
#include <set>
#include <sstream>

#include "hidsym/cli.hpp"
#include "hidsym/sym/parse.hpp"

namespace hidsym::cli {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool valid_name(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

struct Line {
    int number;
    int indent;
    std::string text;
};

class Parser {
public:
    Parser(const std::string& text, std::string source) : source_(std::move(source)) {
        std::istringstream in(text);
        std::string raw;
        int n = 0;
        while (std::getline(in, raw)) {
            ++n;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw = raw.substr(0, hash);
            int indent = 0;
            for (char c : raw) {
                if (c == ' ')
                    ++indent;
                else if (c == '\t')
                    indent += 4;
                else
                    break;
            }
            lines_.push_back({n, indent, trim(raw)});
        }
    }

    AnalysisInput run() {
        std::size_t i = 0;
        while (i < lines_.size()) {
            const Line& l = lines_[i];
            if (l.text.empty()) {
                ++i;
                continue;
            }
            if (l.indent > 0) throw err(l, "indented line outside a block");
            auto w = words(l.text);
            const std::string& kw = w[0];
            std::size_t end = block_end(i);
            if (kw == "chart") {
                if (!in_.chart.coords.empty()) throw err(l, "chart declared twice");
                if (w.size() < 2) throw err(l, "chart needs at least one coordinate");
                std::set<std::string> seen;
                for (std::size_t k = 1; k < w.size(); ++k) {
                    if (!valid_name(w[k])) throw err(l, "invalid coordinate name '" + w[k] + "'");
                    if (!seen.insert(w[k]).second) throw err(l, "coordinate '" + w[k] + "' repeated");
                    in_.chart.coords.push_back(w[k]);
                }
            } else if (kw == "param") {
                parse_param(l);
            } else if (kw == "potential") {
                need_chart(l);
                in_.potential = expr(l, trim(l.text.substr(9)), &known_);
            } else if (kw == "options") {
                for (std::size_t k = i + 1; k < end; ++k) parse_option(lines_[k]);
            } else if (kw == "metric") {
                need_chart(l);
                parse_metric(i, end);
            } else if (kw == "vector") {
                need_chart(l);
                parse_vector(i, end);
            } else if (kw == "map") {
                parse_map_block(i, end);
            } else if (kw == "reduce") {
                need_chart(l);
                parse_reduce(i, end);
            } else {
                throw err(l, "unknown directive '" + kw + "'");
            }
            i = end;
        }
        if (in_.chart.coords.empty()) throw ValidationError(source_ + ": no chart declared");
        if (in_.metric.empty()) throw ValidationError(source_ + ": no metric given");
        for (const auto& r : in_.reductions) {
            for (const auto& m : r.via) check_map(r.line, m);
            for (const auto& m : r.then) check_map(r.line, m);
        }
        return std::move(in_);
    }

private:
    ValidationError err(const Line& l, const std::string& what) const {
        return ValidationError(source_ + ":" + std::to_string(l.number) + ": " + what);
    }
    ValidationError err(int line, const std::string& what) const {
        return ValidationError(source_ + ":" + std::to_string(line) + ": " + what);
    }

    std::size_t block_end(std::size_t i) const {
        std::size_t j = i + 1;
        while (j < lines_.size() && (lines_[j].text.empty() || lines_[j].indent > 0)) ++j;
        return j;
    }

    void need_chart(const Line& l) {
        if (in_.chart.coords.empty()) throw err(l, "the chart must be declared first");
        if (known_.empty()) {
            known_.insert(in_.chart.coords.begin(), in_.chart.coords.end());
            for (const auto& p : in_.params) known_.insert(p.name);
        }
    }

    Expr expr(const Line& l, const std::string& text, const std::set<std::string>* known) const {
        if (text.empty()) throw err(l, "missing expression");
        try {
            return sym::parse(text, known);
        } catch (const sym::ParseError& e) {
            auto col = l.text.find(text);
            return throw err(l, e.message() + " (column " + std::to_string(col + e.offset() + 1 + l.indent) + ")"),
                   Expr();
        } catch (const std::domain_error& e) {
            throw err(l, e.what());
        }
    }

    std::pair<std::string, std::string> split_assign(const Line& l) const {
        auto eq = l.text.find('=');
        if (eq == std::string::npos) throw err(l, "expected '<lhs> = <expression>'");
        return {trim(l.text.substr(0, eq)), trim(l.text.substr(eq + 1))};
    }

    void parse_param(const Line& l) {
        if (!known_.empty()) throw err(l, "parameters must be declared before the metric and vectors");
        std::string rest = trim(l.text.substr(5));
        ParamSpec p;
        auto eq = rest.find('=');
        p.name = trim(rest.substr(0, eq));
        if (!valid_name(p.name)) throw err(l, "invalid parameter name '" + p.name + "'");
        if (in_.chart.contains(p.name)) throw err(l, "parameter '" + p.name + "' is also a coordinate");
        for (const auto& q : in_.params)
            if (q.name == p.name) throw err(l, "parameter '" + p.name + "' declared twice");
        if (eq != std::string::npos) {
            Expr v = expr(l, trim(rest.substr(eq + 1)), nullptr);
            if (!v.constant_value()) throw err(l, "parameter value must be a rational number");
            p.value = *v.constant_value();
        }
        in_.params.push_back(p);
    }

    void parse_option(const Line& l) {
        if (l.text.empty()) return;
        auto w = words(l.text);
        if (w.size() != 2) throw err(l, "expected '<option> <value>'");
        auto as_int = [&](const std::string& s) {
            try {
                std::size_t pos = 0;
                long long v = std::stoll(s, &pos);
                if (pos != s.size() || v < 0) throw std::invalid_argument("");
                return v;
            } catch (const std::exception&) {
                throw err(l, "expected a non-negative integer, got '" + s + "'");
            }
        };
        if (w[0] == "degree")
            in_.options.degree = static_cast<int>(as_int(w[1]));
        else if (w[0] == "samples")
            in_.options.samples = static_cast<int>(as_int(w[1]));
        else if (w[0] == "seed")
            in_.options.seed = static_cast<std::uint64_t>(as_int(w[1]));
        else if (w[0] == "ansatz") {
            if (w[1] == "auto")
                in_.options.ansatz = AnsatzMode::Auto;
            else if (w[1] == "on")
                in_.options.ansatz = AnsatzMode::On;
            else if (w[1] == "off")
                in_.options.ansatz = AnsatzMode::Off;
            else
                throw err(l, "ansatz must be auto, on or off");
        } else
            throw err(l, "unknown option '" + w[0] + "'");
    }

    void parse_metric(std::size_t i, std::size_t end) {
        if (!in_.metric.empty()) throw err(lines_[i], "metric declared twice");
        const std::size_t n = in_.chart.dim();
        in_.metric.assign(n, std::vector<Expr>(n));
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (std::size_t k = i + 1; k < end; ++k) {
            const Line& l = lines_[k];
            if (l.text.empty()) continue;
            auto [lhs, rhs] = split_assign(l);
            auto w = words(lhs);
            if (w.size() != 2) throw err(l, "metric entries are written '<coord> <coord> = <expression>'");
            for (const auto& c : w)
                if (!in_.chart.contains(c)) throw err(l, "'" + c + "' is not a coordinate");
            std::size_t a = in_.chart.index_of(w[0]), b = in_.chart.index_of(w[1]);
            if (a > b) std::swap(a, b);
            if (!seen.insert({a, b}).second) throw err(l, "metric entry " + w[0] + " " + w[1] + " given twice");
            in_.metric[a][b] = in_.metric[b][a] = expr(l, rhs, &known_);
        }
        if (seen.empty()) throw err(lines_[i], "empty metric");
    }

    void parse_vector(std::size_t i, std::size_t end) {
        const Line& h = lines_[i];
        auto w = words(h.text);
        if (w.size() != 2 || !valid_name(w[1])) throw err(h, "expected 'vector <name>'");
        for (const auto& v : in_.vectors)
            if (v.name == w[1]) throw err(h, "vector '" + w[1] + "' defined twice");
        VectorSpec v;
        v.name = w[1];
        v.line = h.number;
        v.xi.assign(in_.chart.dim(), Expr());
        std::set<std::string> seen;
        for (std::size_t k = i + 1; k < end; ++k) {
            const Line& l = lines_[k];
            if (l.text.empty()) continue;
            auto [lhs, rhs] = split_assign(l);
            if (!in_.chart.contains(lhs)) throw err(l, "'" + lhs + "' is not a coordinate");
            if (!seen.insert(lhs).second) throw err(l, "component '" + lhs + "' given twice");
            v.xi[in_.chart.index_of(lhs)] = expr(l, rhs, &known_);
        }
        in_.vectors.push_back(std::move(v));
    }

    void parse_map_block(std::size_t i, std::size_t end) {
        std::vector<std::string> raw;
        for (std::size_t k = i; k < end; ++k) raw.push_back(lines_[k].text);
        try {
            auto m = red::parse_map(raw, lines_[i].number);
            for (const auto& q : in_.maps)
                if (q.name == m.name) throw err(lines_[i], "map '" + m.name + "' defined twice");
            in_.maps.push_back(std::move(m));
        } catch (const red::ReductionError& e) {
            throw ValidationError(source_ + ": " + e.what());
        }
    }

    void parse_reduce(std::size_t i, std::size_t end) {
        const Line& h = lines_[i];
        auto w = words(h.text);
        auto via = std::find(w.begin(), w.end(), "via");
        if (w.size() < 4 || via != w.begin() + 2) throw err(h, "expected 'reduce <vector> via <map>[,<map>...]'");
        ReduceSpec r;
        r.symmetry = w[1];
        r.line = h.number;
        std::string maps;
        for (auto it = via + 1; it != w.end(); ++it) maps += *it + " ";
        r.via = split_list(maps);
        r.label = r.symmetry + " via " + maps.substr(0, maps.size() - 1);
        std::size_t k = i + 1;
        while (k < end) {
            const Line& l = lines_[k];
            if (l.text.empty()) {
                ++k;
                continue;
            }
            auto lw = words(l.text);
            std::size_t sub_end = k + 1;
            while (sub_end < end && (lines_[sub_end].text.empty() || lines_[sub_end].indent > l.indent)) ++sub_end;
            if (lw[0] == "label") {
                r.label = trim(l.text.substr(5));
            } else if (lw[0] == "mu") {
                r.mu = expr(l, trim(l.text.substr(2)), nullptr);
            } else if (lw[0] == "gauge") {
                r.gauge = expr(l, trim(l.text.substr(5)), nullptr);
            } else if (lw[0] == "then") {
                auto more = split_list(trim(l.text.substr(4)));
                r.then.insert(r.then.end(), more.begin(), more.end());
            } else if (lw[0] == "candidate") {
                if (lw.size() != 2 || !valid_name(lw[1])) throw err(l, "expected 'candidate <name>'");
                CandidateSpec c;
                c.name = lw[1];
                c.line = l.number;
                for (std::size_t q = k + 1; q < sub_end; ++q) {
                    const Line& cl = lines_[q];
                    if (cl.text.empty()) continue;
                    auto [lhs, rhs] = split_assign(cl);
                    if (lhs == "eta") {
                        c.eta = expr(cl, rhs, nullptr);
                    } else {
                        if (!valid_name(lhs)) throw err(cl, "invalid coordinate '" + lhs + "'");
                        if (c.components.count(lhs)) throw err(cl, "component '" + lhs + "' given twice");
                        c.components[lhs] = expr(cl, rhs, nullptr);
                    }
                }
                r.candidates.push_back(std::move(c));
            } else if (lw[0] == "expect" && lw.size() >= 2 && lw[1] == "typeii") {
                std::vector<std::string> names(lw.begin() + 2, lw.end());
                if (names.size() == 1 && names[0] == "none") names.clear();
                else if (names.empty()) throw err(l, "expected 'expect typeii <names...>|none'");
                r.expect_typeii = names;
            } else if (lw[0] == "expect" && lw.size() == 2 && lw[1] == "equation") {
                ExpectedEquation e;
                e.line = l.number;
                for (std::size_t q = k + 1; q < sub_end; ++q) {
                    const Line& el = lines_[q];
                    if (el.text.empty()) continue;
                    auto [lhs, rhs] = split_assign(el);
                    auto ew = words(lhs);
                    Expr v = expr(el, rhs, nullptr);
                    if (ew.size() == 1 && ew[0] == "V")
                        e.V = v;
                    else if (ew.size() == 2 && ew[0] == "B")
                        e.B[ew[1]] = v;
                    else if (ew.size() == 2)
                        e.A[{ew[0], ew[1]}] = v;
                    else
                        throw err(el, "expected '<coord> <coord> = ...', 'B <coord> = ...' or 'V = ...'");
                }
                r.expect_equation = e;
            } else {
                throw err(l, "unknown reduce directive '" + lw[0] + "'");
            }
            k = sub_end;
        }
        in_.reductions.push_back(std::move(r));
    }

    void check_map(int line, const std::string& name) const {
        for (const auto& m : in_.maps)
            if (m.name == name) return;
        for (const auto& m : red::registry())
            if (m.name == name) return;
        throw err(line, "unknown coordinate map '" + name + "'");
    }

    std::string source_;
    std::vector<Line> lines_;
    AnalysisInput in_;
    std::set<std::string> known_;
};

}  // namespace

AnalysisInput parse_input(const std::string& text, const std::string& source) {
    Parser p(text, source);
    auto in = p.run();
    in.name = source;
    return in;
}

void apply_params(AnalysisInput& in, const std::map<std::string, mpq_class>& values) {
    for (const auto& [name, v] : values) {
        auto it = std::find_if(in.params.begin(), in.params.end(), [&](const ParamSpec& p) { return p.name == name; });
        if (it == in.params.end()) throw ValidationError("--param " + name + ": no such parameter in " + in.name);
        it->value = v;
    }
}

}  // namespace hidsym::cli
