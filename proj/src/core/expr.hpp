#pragma once

#include <memory>
#include <string>

#include "linalg.hpp"

namespace np3 {

// Small arithmetic expression grammar for declarative metric files:
// operators + - * / ^, unary minus, parentheses, numeric literals,
// variables u1 u2 u3, functions sin cos sinh cosh exp log.
class Expr {
public:
    static Expr parse(const std::string& text);

    double eval(const Vec3& u) const;
    const std::string& text() const { return text_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

}  // namespace np3
