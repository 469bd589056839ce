#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fredholm/matrix.hpp"
#include "fredholm/space.hpp"

namespace fredholm::cli {

///
/// Ordered report tree rendered either as indented text or as JSON. Reals
/// are kept as doubles and formatted only at render time, so both renderings
/// carry the same 12 significant digits.
///
class Node {
public:
    using List = std::vector<Node>;
    using Map = std::vector<std::pair<std::string, Node>>;

    Node() = default;

    static Node real(double x);
    static Node integer(long long x);
    static Node text(std::string s);
    static Node boolean(bool b);
    /// a plain real when the imaginary part is exactly 0, otherwise [re, im]
    static Node scalar(Scalar z);
    /// all-real vectors as a list of reals, otherwise a list of [re, im] pairs
    static Node vector(std::span<const Scalar> v);
    static Node vector(const Vector& v) { return vector(v.coords()); }
    static Node reals(std::span<const double> v);
    static Node basis(const std::vector<Vector>& vs);
    static Node rows(const Matrix& m);
    static Node list(List items = {});
    static Node map();
    /// map rendered on one line as "k1=v1 k2=v2" in text mode
    static Node row();

    Node& set(std::string key, Node value);
    Node& push(Node value);

    const Node* find(const std::string& key) const;

    void write_json(std::ostream& out, int indent = 0) const;
    void write_text(std::ostream& out, int indent = 0) const;

private:
    using Value = std::variant<std::monostate, bool, long long, double, std::string, List, Map>;

    bool is_leaf() const;
    void write_inline_text(std::ostream& out) const;
    void write_inline_json(std::ostream& out) const;

    Value value_;
    bool inline_ = false;
};

/// Scientific notation with 12 significant digits; -0 prints as 0.
std::string format_real(double x);

struct Report {
    /// first line of the text rendering, e.g. "case=Degenerate n=1 status=solvable"
    std::string headline;
    Node body = Node::map();
};

void render(const Report& report, bool json, std::ostream& out);

} // namespace fredholm::cli
