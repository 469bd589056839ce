#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace fredholm::cli {

std::string format_real(double x) {
    if (x == 0.0)
        x = 0.0;
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return buf;
}

Node Node::real(double x) {
    Node n;
    n.value_ = x;
    return n;
}

Node Node::integer(long long x) {
    Node n;
    n.value_ = x;
    return n;
}

Node Node::text(std::string s) {
    Node n;
    n.value_ = std::move(s);
    return n;
}

Node Node::boolean(bool b) {
    Node n;
    n.value_ = b;
    return n;
}

Node Node::scalar(Scalar z) {
    if (z.imag() == 0.0)
        return real(z.real());
    Node n = list({real(z.real()), real(z.imag())});
    n.inline_ = true;
    return n;
}

Node Node::vector(std::span<const Scalar> v) {
    Node n = list();
    for (const auto& z : v)
        n.push(scalar(z));
    n.inline_ = true;
    return n;
}

Node Node::reals(std::span<const double> v) {
    Node n = list();
    for (double x : v)
        n.push(real(x));
    n.inline_ = true;
    return n;
}

Node Node::basis(const std::vector<Vector>& vs) {
    Node n = list();
    for (const auto& v : vs)
        n.push(vector(v));
    return n;
}

Node Node::rows(const Matrix& m) {
    Node n = list();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<Scalar> r(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j)
            r[j] = m(i, j);
        n.push(vector(r));
    }
    return n;
}

Node Node::list(List items) {
    Node n;
    n.value_ = std::move(items);
    return n;
}

Node Node::map() {
    Node n;
    n.value_ = Map{};
    return n;
}

Node Node::row() {
    Node n = map();
    n.inline_ = true;
    return n;
}

Node& Node::set(std::string key, Node value) {
    std::get<Map>(value_).emplace_back(std::move(key), std::move(value));
    return *this;
}

Node& Node::push(Node value) {
    std::get<List>(value_).push_back(std::move(value));
    return *this;
}

const Node* Node::find(const std::string& key) const {
    if (const auto* m = std::get_if<Map>(&value_))
        for (const auto& [k, v] : *m)
            if (k == key)
                return &v;
    return nullptr;
}

bool Node::is_leaf() const {
    return !std::holds_alternative<List>(value_) && !std::holds_alternative<Map>(value_);
}

namespace {

void pad(std::ostream& out, int indent) {
    for (int i = 0; i < indent; ++i)
        out << ' ';
}

void json_string(std::ostream& out, const std::string& s) {
    out << '"';
    for (char c : s) {
        switch (c) {
        case '"':
            out << "\\\"";
            break;
        case '\\':
            out << "\\\\";
            break;
        case '\n':
            out << "\\n";
            break;
        case '\t':
            out << "\\t";
            break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out << buf;
            } else {
                out << c;
            }
        }
    }
    out << '"';
}

} // namespace

void Node::write_inline_json(std::ostream& out) const {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                out << "null";
            } else if constexpr (std::is_same_v<T, bool>) {
                out << (v ? "true" : "false");
            } else if constexpr (std::is_same_v<T, long long>) {
                out << v;
            } else if constexpr (std::is_same_v<T, double>) {
                // JSON has no nan/inf literal
                if (std::isfinite(v))
                    out << format_real(v);
                else
                    json_string(out, format_real(v));
            } else if constexpr (std::is_same_v<T, std::string>) {
                json_string(out, v);
            } else if constexpr (std::is_same_v<T, List>) {
                out << '[';
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i)
                        out << ", ";
                    v[i].write_inline_json(out);
                }
                out << ']';
            } else {
                out << '{';
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i)
                        out << ", ";
                    json_string(out, v[i].first);
                    out << ": ";
                    v[i].second.write_inline_json(out);
                }
                out << '}';
            }
        },
        value_);
}

void Node::write_json(std::ostream& out, int indent) const {
    if (is_leaf() || inline_) {
        write_inline_json(out);
        return;
    }
    if (const auto* l = std::get_if<List>(&value_)) {
        if (l->empty()) {
            out << "[]";
            return;
        }
        out << "[\n";
        for (std::size_t i = 0; i < l->size(); ++i) {
            pad(out, indent + 2);
            (*l)[i].write_json(out, indent + 2);
            out << (i + 1 < l->size() ? ",\n" : "\n");
        }
        pad(out, indent);
        out << ']';
        return;
    }
    const auto& m = std::get<Map>(value_);
    if (m.empty()) {
        out << "{}";
        return;
    }
    out << "{\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        pad(out, indent + 2);
        json_string(out, m[i].first);
        out << ": ";
        m[i].second.write_json(out, indent + 2);
        out << (i + 1 < m.size() ? ",\n" : "\n");
    }
    pad(out, indent);
    out << '}';
}

void Node::write_inline_text(std::ostream& out) const {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                out << "-";
            } else if constexpr (std::is_same_v<T, bool>) {
                out << (v ? "yes" : "no");
            } else if constexpr (std::is_same_v<T, long long>) {
                out << v;
            } else if constexpr (std::is_same_v<T, double>) {
                out << format_real(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
                out << v;
            } else if constexpr (std::is_same_v<T, List>) {
                out << '[';
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i)
                        out << ", ";
                    v[i].write_inline_text(out);
                }
                out << ']';
            } else {
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i)
                        out << ' ';
                    out << v[i].first << '=';
                    v[i].second.write_inline_text(out);
                }
            }
        },
        value_);
}

void Node::write_text(std::ostream& out, int indent) const {
    if (const auto* m = std::get_if<Map>(&value_); m && !inline_) {
        for (const auto& [key, child] : *m) {
            pad(out, indent);
            out << key << ':';
            if (child.is_leaf() || child.inline_) {
                out << ' ';
                child.write_inline_text(out);
                out << '\n';
            } else if (const auto* l = std::get_if<List>(&child.value_); l && l->empty()) {
                out << " []\n";
            } else {
                out << '\n';
                child.write_text(out, indent + 2);
            }
        }
        return;
    }
    if (const auto* l = std::get_if<List>(&value_); l && !inline_) {
        for (const auto& item : *l) {
            pad(out, indent);
            out << '-';
            if (item.is_leaf() || item.inline_) {
                out << ' ';
                item.write_inline_text(out);
                out << '\n';
            } else {
                out << '\n';
                item.write_text(out, indent + 2);
            }
        }
        return;
    }
    pad(out, indent);
    write_inline_text(out);
    out << '\n';
}

void render(const Report& report, bool json, std::ostream& out) {
    if (json) {
        report.body.write_json(out);
        out << '\n';
        return;
    }
    if (!report.headline.empty())
        out << report.headline << '\n';
    report.body.write_text(out);
}

} // namespace fredholm::cli
