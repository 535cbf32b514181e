#include "document.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace poly::cli {

namespace {

enum class Tok { Ident, Int, Punct, Arrow, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    Location at;
    bool quoted = false;
};

bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view text)
{
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        char c = text[i];
        Location at{line, col};
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                advance(1);
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({Tok::Arrow, "->", at});
            advance(2);
        } else if (c == '"') {
            advance(1);
            std::string s;
            while (i < text.size() && text[i] != '"') {
                if (text[i] == '\n')
                    throw ParseError(at, "unterminated quoted label");
                if (text[i] == '\\' && i + 1 < text.size()) {
                    advance(1);
                }
                s += text[i];
                advance(1);
            }
            if (i == text.size())
                throw ParseError(at, "unterminated quoted label");
            advance(1);
            out.push_back({Tok::Ident, s, at, true});
        } else if (ident_char(c)) {
            std::string s;
            while (i < text.size() &&
                   (ident_char(text[i]) || (text[i] == '-' && i + 1 < text.size() && text[i + 1] != '>'))) {
                s += text[i];
                advance(1);
            }
            bool digits = std::all_of(s.begin(), s.end(), [](char d) { return std::isdigit(static_cast<unsigned char>(d)); });
            out.push_back({digits ? Tok::Int : Tok::Ident, s, at});
        } else if (std::string_view("{}[]():;,|=").find(c) != std::string_view::npos) {
            out.push_back({Tok::Punct, std::string(1, c), at});
            advance(1);
        } else {
            throw ParseError(at, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Tok::End, "", {line, col}});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Document document()
    {
        Document doc;
        while (peek().kind != Tok::End) {
            const auto& kw = expect_word();
            if (kw.text == "poly" || kw.text == "tree")
                doc.definitions.push_back(poly(kw));
            else if (kw.text == "coll")
                doc.definitions.push_back(coll(kw));
            else if (kw.text == "map")
                doc.definitions.push_back(map(kw));
            else if (kw.text == "presheaf")
                doc.definitions.push_back(presheaf(kw));
            else
                throw ParseError(kw.at, "expected poly, tree, coll, map or presheaf, found '" + kw.text + "'");
        }
        return doc;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

    bool at_punct(char c) const { return peek().kind == Tok::Punct && peek().text[0] == c; }
    bool at_word(const char* w) const { return peek().kind == Tok::Ident && !peek().quoted && peek().text == w; }

    const Token& expect_punct(char c)
    {
        if (!at_punct(c))
            throw ParseError(peek().at, std::string("expected '") + c + "'" + found());
        return next();
    }
    void expect_arrow()
    {
        if (peek().kind != Tok::Arrow)
            throw ParseError(peek().at, "expected '->'" + found());
        next();
    }
    const Token& expect_word()
    {
        if (peek().kind != Tok::Ident || peek().quoted)
            throw ParseError(peek().at, "expected a keyword" + found());
        return next();
    }
    void expect_keyword(const char* w)
    {
        if (!at_word(w))
            throw ParseError(peek().at, std::string("expected '") + w + "'" + found());
        next();
    }
    std::string label()
    {
        if (peek().kind != Tok::Ident && peek().kind != Tok::Int)
            throw ParseError(peek().at, "expected a label" + found());
        return next().text;
    }
    std::string found() const
    {
        if (peek().kind == Tok::End)
            return ", found end of input";
        return ", found '" + peek().text + "'";
    }
    // Items separated by ';' until the closing brace.
    template <class Fn>
    void block(Fn item)
    {
        expect_punct('{');
        while (!at_punct('}')) {
            item();
            if (!at_punct('}'))
                expect_punct(';');
        }
        expect_punct('}');
    }
    std::vector<std::string> labels_until(char close)
    {
        std::vector<std::string> out;
        if (at_punct(close))
            return out;
        out.push_back(label());
        while (at_punct(',')) {
            next();
            out.push_back(label());
        }
        return out;
    }

    PolyDef poly(const Token& kw)
    {
        PolyDef d;
        d.is_tree = kw.text == "tree";
        d.at = kw.at;
        d.name = label();
        bool edges_seen = false;
        block([&] {
            if (at_word("edges")) {
                if (edges_seen)
                    throw ParseError(peek().at, "edges listed twice");
                edges_seen = true;
                next();
                expect_punct(':');
                while (peek().kind == Tok::Ident || peek().kind == Tok::Int)
                    d.edges.push_back(next().text);
            } else if (at_word("node")) {
                NodeDef n;
                n.at = next().at;
                n.name = label();
                expect_punct(':');
                expect_punct('[');
                n.inputs = labels_until(']');
                expect_punct(']');
                expect_arrow();
                n.output = label();
                d.nodes.push_back(std::move(n));
            } else {
                throw ParseError(peek().at, "expected 'edges' or 'node'" + found());
            }
        });
        return d;
    }

    CollDef coll(const Token& kw)
    {
        CollDef d;
        d.at = kw.at;
        d.name = label();
        block([&] {
            if (at_word("colours")) {
                next();
                expect_punct(':');
                while (peek().kind == Tok::Ident || peek().kind == Tok::Int)
                    d.colours.push_back(next().text);
            } else if (at_word("op")) {
                OpDef o;
                o.at = next().at;
                o.name = label();
                expect_punct(':');
                expect_punct('(');
                o.inputs = labels_until(')');
                expect_punct(')');
                expect_arrow();
                o.output = label();
                bool bracketed = at_punct('[');
                if (bracketed || at_word("fixed-by")) {
                    if (bracketed)
                        next();
                    expect_keyword("fixed-by");
                    expect_punct(':');
                    while (at_punct('(')) {
                        next();
                        Permutation p;
                        while (peek().kind == Tok::Int)
                            p.push_back(std::stoul(next().text));
                        expect_punct(')');
                        o.fixed_by.push_back(std::move(p));
                    }
                    if (bracketed)
                        expect_punct(']');
                }
                d.ops.push_back(std::move(o));
            } else {
                throw ParseError(peek().at, "expected 'colours' or 'op'" + found());
            }
        });
        return d;
    }

    MapDef map(const Token& kw)
    {
        MapDef d;
        d.at = kw.at;
        d.name = label();
        expect_punct(':');
        d.source = label();
        expect_arrow();
        d.target = label();
        block([&] {
            if (at_word("edge")) {
                next();
                std::string x = label();
                expect_arrow();
                d.edges.emplace_back(x, label());
            } else if (at_word("node")) {
                next();
                std::string u = label();
                expect_arrow();
                SubtreeExpr s;
                if (at_punct('{')) {
                    next();
                    while (!at_punct('}'))
                        s.nodes.push_back(label());
                    next();
                } else if (at_punct('|')) {
                    next();
                    s.trivial = true;
                    s.edge = label();
                } else {
                    s.nodes.push_back(label());
                }
                d.nodes.emplace_back(u, std::move(s));
            } else {
                throw ParseError(peek().at, "expected 'edge' or 'node'" + found());
            }
        });
        return d;
    }

    PresheafDef presheaf(const Token& kw)
    {
        PresheafDef d;
        d.at = kw.at;
        d.name = label();
        expect_punct('=');
        const auto& how = expect_word();
        if (how.text == "nerve") {
            d.source = PresheafSource::Nerve;
        } else if (how.text == "extend") {
            d.source = PresheafSource::Extend;
        } else if (how.text == "double") {
            d.source = PresheafSource::Double;
        } else {
            throw ParseError(how.at, "expected nerve, extend or double, found '" + how.text + "'");
        }
        d.argument = label();
        if (d.source == PresheafSource::Double) {
            expect_keyword("at");
            d.at_tree = label();
        }
        expect_punct(';');
        return d;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

template <class T>
const T* get(const Document& doc, const std::string& name)
{
    const auto* d = doc.find(name);
    return d ? std::get_if<T>(d) : nullptr;
}

void check_references(const Document& doc)
{
    std::set<std::string> names;
    for (const auto& d : doc.definitions)
        if (!names.insert(name_of(d)).second)
            throw ParseError(location_of(d), "duplicate definition of '" + name_of(d) + "'");
    auto tree_ref = [&](const std::string& name, Location at) {
        const auto* p = get<PolyDef>(doc, name);
        if (!p || !p->is_tree)
            throw ParseError(at, "'" + name + "' is not a tree");
    };
    for (const auto& d : doc.definitions) {
        if (const auto* m = std::get_if<MapDef>(&d)) {
            tree_ref(m->source, m->at);
            tree_ref(m->target, m->at);
        } else if (const auto* x = std::get_if<PresheafDef>(&d)) {
            switch (x->source) {
            case PresheafSource::Nerve:
                if (!get<PolyDef>(doc, x->argument))
                    throw ParseError(x->at, "'" + x->argument + "' is not a poly or tree");
                break;
            case PresheafSource::Extend:
                if (!get<CollDef>(doc, x->argument))
                    throw ParseError(x->at, "'" + x->argument + "' is not a collection");
                break;
            case PresheafSource::Double:
                if (!get<PresheafDef>(doc, x->argument) || x->argument == x->name)
                    throw ParseError(x->at, "'" + x->argument + "' is not another presheaf");
                tree_ref(x->at_tree, x->at);
                break;
            }
        }
    }
}

bool plain(const std::string& s)
{
    if (s.empty() || s == "edges" || s == "node" || s == "colours" || s == "op" || s == "edge")
        return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (ident_char(c))
            continue;
        if (c == '-' && i > 0 && i + 1 < s.size() && s[i + 1] != '>' && ident_char(s[i + 1]))
            continue;
        return false;
    }
    return true;
}

std::string q(const std::string& s)
{
    if (plain(s))
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string join(const std::vector<std::string>& v, const char* sep)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? sep : "") + q(v[i]);
    return out;
}

std::string loc(Location at)
{
    return std::to_string(at.line) + ":" + std::to_string(at.column) + ": ";
}

// Rethrows with the definition's location unless the message already carries one.
[[noreturn]] void relocate(const Error& e, Location at)
{
    std::string what = e.what();
    std::string prefix = std::string(to_string(e.kind())) + ": ";
    if (what.rfind(prefix, 0) == 0)
        what = what.substr(prefix.size());
    std::size_t i = 0;
    while (i < what.size() && std::isdigit(static_cast<unsigned char>(what[i])))
        ++i;
    if (i > 0 && i < what.size() && what[i] == ':')
        throw;
    throw Error(e.kind(), loc(at) + what);
}

std::size_t lookup(const FinSet& set, const std::string& label, Location at, const char* what)
{
    auto i = set.find(label);
    if (!i)
        throw Error(ErrorKind::UnknownLabel, loc(at) + "unknown " + what + " '" + label + "'");
    return *i;
}

}  // namespace

const Definition* Document::find(const std::string& name) const
{
    for (const auto& d : definitions)
        if (name_of(d) == name)
            return &d;
    return nullptr;
}

bool operator==(const NodeDef& a, const NodeDef& b)
{
    return a.name == b.name && a.inputs == b.inputs && a.output == b.output;
}
bool operator==(const PolyDef& a, const PolyDef& b)
{
    return a.name == b.name && a.is_tree == b.is_tree && a.edges == b.edges && a.nodes == b.nodes;
}
bool operator==(const OpDef& a, const OpDef& b)
{
    return a.name == b.name && a.inputs == b.inputs && a.output == b.output && a.fixed_by == b.fixed_by;
}
bool operator==(const CollDef& a, const CollDef& b)
{
    return a.name == b.name && a.colours == b.colours && a.ops == b.ops;
}
bool operator==(const SubtreeExpr& a, const SubtreeExpr& b)
{
    return a.trivial == b.trivial && a.edge == b.edge && a.nodes == b.nodes;
}
bool operator==(const MapDef& a, const MapDef& b)
{
    return a.name == b.name && a.source == b.source && a.target == b.target && a.edges == b.edges && a.nodes == b.nodes;
}
bool operator==(const PresheafDef& a, const PresheafDef& b)
{
    return a.name == b.name && a.source == b.source && a.argument == b.argument && a.at_tree == b.at_tree;
}
bool operator==(const Document& a, const Document& b)
{
    return a.definitions == b.definitions;
}

const std::string& name_of(const Definition& d)
{
    return std::visit([](const auto& x) -> const std::string& { return x.name; }, d);
}

Location location_of(const Definition& d)
{
    return std::visit([](const auto& x) { return x.at; }, d);
}

Document parse(std::string_view text)
{
    Parser p(lex(text));
    auto doc = p.document();
    check_references(doc);
    return doc;
}

std::string print(const Definition& d)
{
    std::ostringstream out;
    if (const auto* p = std::get_if<PolyDef>(&d)) {
        out << (p->is_tree ? "tree " : "poly ") << q(p->name) << " {\n";
        out << "  edges: " << join(p->edges, " ") << ";\n";
        for (const auto& n : p->nodes)
            out << "  node " << q(n.name) << " : [" << join(n.inputs, ", ") << "] -> " << q(n.output) << ";\n";
        out << "}\n";
    } else if (const auto* c = std::get_if<CollDef>(&d)) {
        out << "coll " << q(c->name) << " {\n";
        out << "  colours: " << join(c->colours, " ") << ";\n";
        for (const auto& o : c->ops) {
            out << "  op " << q(o.name) << " : (" << join(o.inputs, ", ") << ") -> " << q(o.output);
            if (!o.fixed_by.empty()) {
                out << " [fixed-by:";
                for (const auto& perm : o.fixed_by) {
                    out << " (";
                    for (std::size_t i = 0; i < perm.size(); ++i)
                        out << (i ? " " : "") << perm[i];
                    out << ")";
                }
                out << "]";
            }
            out << ";\n";
        }
        out << "}\n";
    } else if (const auto* m = std::get_if<MapDef>(&d)) {
        out << "map " << q(m->name) << " : " << q(m->source) << " -> " << q(m->target) << " {\n";
        for (const auto& [x, y] : m->edges)
            out << "  edge " << q(x) << " -> " << q(y) << ";\n";
        for (const auto& [u, s] : m->nodes) {
            out << "  node " << q(u) << " -> ";
            if (s.trivial)
                out << "|" << q(s.edge);
            else if (s.nodes.size() == 1)
                out << q(s.nodes[0]);
            else
                out << "{" << join(s.nodes, " ") << "}";
            out << ";\n";
        }
        out << "}\n";
    } else if (const auto* x = std::get_if<PresheafDef>(&d)) {
        out << "presheaf " << q(x->name) << " = ";
        switch (x->source) {
        case PresheafSource::Nerve:
            out << "nerve " << q(x->argument);
            break;
        case PresheafSource::Extend:
            out << "extend " << q(x->argument);
            break;
        case PresheafSource::Double:
            out << "double " << q(x->argument) << " at " << q(x->at_tree);
            break;
        }
        out << ";\n";
    }
    return out.str();
}

std::string print(const Document& doc)
{
    std::string out;
    for (std::size_t i = 0; i < doc.definitions.size(); ++i)
        out += (i ? "\n" : "") + print(doc.definitions[i]);
    return out;
}

PolyDef poly_to_def(const std::string& name, const PolyEndo& p, bool is_tree)
{
    PolyDef d;
    d.name = name;
    d.is_tree = is_tree;
    d.edges = p.p0().labels();
    for (std::size_t b = 0; b < p.p1().size(); ++b) {
        NodeDef n;
        n.name = p.p1()[b];
        for (auto e : p.fibre(b))
            n.inputs.push_back(p.p0()[p.s()(e)]);
        n.output = p.p0()[p.t()(b)];
        d.nodes.push_back(std::move(n));
    }
    return d;
}

PolyEndo build_poly(const PolyDef& def)
{
    try {
        FinSet edges(def.edges);
        std::vector<std::string> names, marked;
        std::vector<std::size_t> s, p, t;
        for (std::size_t b = 0; b < def.nodes.size(); ++b) {
            const auto& n = def.nodes[b];
            names.push_back(n.name);
            for (std::size_t i = 0; i < n.inputs.size(); ++i) {
                marked.push_back(n.name + "." + std::to_string(i));
                s.push_back(lookup(edges, n.inputs[i], n.at, "edge"));
                p.push_back(b);
            }
            t.push_back(lookup(edges, n.output, n.at, "edge"));
        }
        return make_poly(edges, FinSet(std::move(names)), FinSet(std::move(marked)), s, p, t);
    } catch (const Error& e) {
        relocate(e, def.at);
    }
}

Tree build_tree(const PolyDef& def)
{
    return certify_tree(build_poly(def));
}

Collection build_collection(const CollDef& def)
{
    try {
        FinSet colours(def.colours);
        struct Entry {
            std::string label;
            std::vector<std::size_t> cols;
        };
        std::map<std::size_t, std::vector<const OpDef*>> by_arity;
        for (const auto& o : def.ops)
            by_arity[o.inputs.size()].push_back(&o);
        std::map<std::size_t, SymArityOps> arities;
        for (const auto& [n, ops] : by_arity) {
            auto perms = all_permutations(n);
            std::vector<std::string> labels;
            std::vector<std::vector<std::size_t>> proj(n + 1);
            // Element index by (op, coset representative).
            std::map<std::pair<std::size_t, Permutation>, std::size_t> index;
            std::vector<std::vector<Permutation>> groups;
            for (std::size_t k = 0; k < ops.size(); ++k) {
                const auto& o = *ops[k];
                std::vector<std::size_t> cols;
                for (const auto& c : o.inputs)
                    cols.push_back(lookup(colours, c, o.at, "colour"));
                cols.push_back(lookup(colours, o.output, o.at, "colour"));
                std::set<Permutation> group;
                Permutation id(n);
                for (std::size_t i = 0; i < n; ++i)
                    id[i] = i;
                group.insert(id);
                for (const auto& g : o.fixed_by) {
                    auto sorted = g;
                    std::sort(sorted.begin(), sorted.end());
                    if (sorted != id)
                        throw Error(ErrorKind::InvalidArgument, loc(o.at) + "fixed-by entry is not a permutation of 0.." + std::to_string(n == 0 ? 0 : n - 1));
                }
                for (bool grew = true; grew;) {
                    grew = false;
                    for (auto h : std::vector<Permutation>(group.begin(), group.end()))
                        for (const auto& g : o.fixed_by) {
                            Permutation hg(n);
                            for (std::size_t i = 0; i < n; ++i)
                                hg[i] = h[g[i]];
                            grew = group.insert(hg).second || grew;
                        }
                }
                for (const auto& h : group)
                    for (std::size_t i = 0; i < n; ++i)
                        if (cols[h[i]] != cols[i])
                            throw Error(ErrorKind::ColourMismatch, loc(o.at) + "fixed-by permutation moves the input colours of " + o.name);
                for (const auto& sigma : perms) {
                    Permutation rep = sigma;
                    for (const auto& h : group) {
                        Permutation hs(n);
                        for (std::size_t i = 0; i < n; ++i)
                            hs[i] = h[sigma[i]];
                        rep = std::min(rep, hs);
                    }
                    if (index.count({k, rep}))
                        continue;
                    index.emplace(std::make_pair(k, rep), labels.size());
                    std::string l = o.name;
                    if (rep != id) {
                        l = "(" + o.name + ",[";
                        for (std::size_t i = 0; i < n; ++i)
                            l += (i ? "," : "") + std::to_string(rep[i]);
                        l += "])";
                    }
                    labels.push_back(l);
                    for (std::size_t i = 0; i < n; ++i)
                        proj[i].push_back(cols[rep[i]]);
                    proj[n].push_back(cols[n]);
                }
                groups.push_back(std::vector<Permutation>(group.begin(), group.end()));
            }
            SymArityOps a;
            a.ops = FinSet(labels);
            for (auto& img : proj)
                a.projections.emplace_back(a.ops, colours, std::move(img));
            auto rep_of = [&](std::size_t k, const Permutation& sigma) {
                Permutation rep = sigma;
                for (const auto& h : groups[k]) {
                    Permutation hs(n);
                    for (std::size_t i = 0; i < n; ++i)
                        hs[i] = h[sigma[i]];
                    rep = std::min(rep, hs);
                }
                return rep;
            };
            for (std::size_t i = 0; i + 1 < n; ++i) {
                std::vector<std::size_t> img(labels.size());
                for (const auto& [key, x] : index) {
                    Permutation moved = key.second;
                    std::swap(moved[i], moved[i + 1]);
                    img[x] = index.at({key.first, rep_of(key.first, moved)});
                }
                a.generators.emplace_back(a.ops, a.ops, std::move(img));
            }
            arities.emplace(n, std::move(a));
        }
        return make_collection(colours, std::move(arities));
    } catch (const Error& e) {
        relocate(e, def.at);
    }
}

OmegaMorphism build_map(const Document& doc, const MapDef& def)
{
    auto s = build_tree(std::get<PolyDef>(*doc.find(def.source)));
    auto t = build_tree(std::get<PolyDef>(*doc.find(def.target)));
    try {
        std::vector<std::size_t> edges(s.edge_count(), npos);
        for (const auto& [x, y] : def.edges) {
            std::size_t i = lookup(s.edges(), x, def.at, "source edge");
            if (edges[i] != npos)
                throw Error(ErrorKind::DuplicateLabel, loc(def.at) + "edge '" + x + "' mapped twice");
            edges[i] = lookup(t.edges(), y, def.at, "target edge");
        }
        for (std::size_t x = 0; x < edges.size(); ++x)
            if (edges[x] == npos)
                throw Error(ErrorKind::NotATreeMorphism, loc(def.at) + "edge '" + s.edges()[x] + "' has no image");
        if (def.nodes.empty())
            return omega_from_edges(s, t, edges);
        std::vector<std::optional<Subtree>> images(s.node_count());
        for (const auto& [u, expr] : def.nodes) {
            std::size_t b = lookup(s.nodes(), u, def.at, "source node");
            if (expr.trivial) {
                images[b] = Subtree(t, lookup(t.edges(), expr.edge, def.at, "target edge"));
            } else {
                std::vector<std::size_t> nodes;
                for (const auto& v : expr.nodes)
                    nodes.push_back(lookup(t.nodes(), v, def.at, "target node"));
                images[b] = Subtree(t, nodes);
            }
        }
        std::vector<Subtree> out;
        for (std::size_t b = 0; b < images.size(); ++b) {
            if (!images[b])
                throw Error(ErrorKind::NotATreeMorphism, loc(def.at) + "node '" + s.nodes()[b] + "' has no image");
            out.push_back(*images[b]);
        }
        return make_omega_morphism(s, t, edges, std::move(out));
    } catch (const Error& e) {
        relocate(e, def.at);
    }
}

FinitePresheaf build_presheaf(const Document& doc, const PresheafDef& def, const SitePtr& site)
{
    switch (def.source) {
    case PresheafSource::Nerve:
        return nerve_N0(build_poly(std::get<PolyDef>(*doc.find(def.argument))), site);
    case PresheafSource::Extend:
        return sheaf_extend(build_collection(std::get<CollDef>(*doc.find(def.argument))), site);
    case PresheafSource::Double: {
        auto base = build_presheaf(doc, std::get<PresheafDef>(*doc.find(def.argument)), site);
        auto t = build_tree(std::get<PolyDef>(*doc.find(def.at_tree)));
        std::size_t o = site->object_of(t);
        if (o == npos)
            throw Error(ErrorKind::BoundExceeded, loc(def.at) + "tree '" + def.at_tree + "' lies outside the truncation");
        return double_at(base, o);
    }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown presheaf source");
}

}  // namespace poly::cli
