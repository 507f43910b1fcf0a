#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hidsym/sym/expr.hpp"

namespace hidsym::sym {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset), message_(what) {}
    std::size_t offset() const { return offset_; }
    const std::string& message() const { return message_; }

private:
    std::size_t offset_;
    std::string message_;
};

// Parses the expression grammar: + - * / ^, parentheses, rational literals,
// identifiers and the kernels exp ln sin cos tan sinh cosh tanh sqrt.
// Exponents must be integer or parenthesized rational literals.
// If `known` is non-null every identifier must be one of its members.
Expr parse(std::string_view text, const std::set<std::string>* known = nullptr);

}  // namespace hidsym::sym
