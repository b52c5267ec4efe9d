#include "hyperchrom/io.hpp"

#include "hyperchrom/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace hyperchrom {

namespace {

class LineReader {
public:
    explicit LineReader(std::istream& in)
        : in_(in)
    {
    }

    // Next line, or ParseError at end of input.
    std::string next(const char* what)
    {
        std::string line;
        if (!std::getline(in_, line))
            fail(std::string("unexpected end of input, expected ") + what);
        ++number_;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        return line;
    }

    bool more()
    {
        return in_.peek() != std::char_traits<char>::eof();
    }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(number_ + 1) + ": " + msg);
    }

    std::vector<std::uint64_t> numbers(const std::string& line) const
    {
        std::vector<std::uint64_t> out;
        const char* p = line.data();
        const char* end = p + line.size();
        while (true) {
            while (p < end && (*p == ' ' || *p == '\t'))
                ++p;
            if (p == end)
                break;
            std::uint64_t v = 0;
            auto [q, ec] = std::from_chars(p, end, v);
            if (ec != std::errc() || (q < end && *q != ' ' && *q != '\t'))
                fail("expected a non-negative integer in \"" + line + "\"");
            out.push_back(v);
            p = q;
        }
        return out;
    }

    std::vector<std::uint64_t> exactly(const char* what, std::size_t count)
    {
        auto line = next(what);
        auto v = numbers(line);
        if (v.size() != count)
            fail(std::string("expected ") + std::to_string(count) + " numbers for " + what);
        return v;
    }

    void header(const char* magic)
    {
        auto line = next(magic);
        if (line != std::string(magic) + " 1")
            fail(std::string("expected header \"") + magic + " 1\"");
    }

    std::size_t line_number() const { return number_; }

private:
    std::istream& in_;
    std::size_t number_ = 0;
};

std::string join(const std::vector<Vertex>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ' ';
        out += std::to_string(v[i]);
    }
    return out;
}

Edge as_edge(const LineReader& r, const std::vector<std::uint64_t>& nums, std::size_t n)
{
    Edge e;
    for (auto x : nums) {
        if (x >= n)
            r.fail("vertex " + std::to_string(x) + " out of range");
        e.push_back(static_cast<Vertex>(x));
    }
    return e;
}

Hypergraph read_nhg_body(LineReader& r)
{
    auto head = r.exactly("<n> <edge_count>", 2);
    std::vector<Edge> edges;
    for (std::uint64_t i = 0; i < head[1]; ++i) {
        auto line = r.next("an edge");
        auto e = as_edge(r, r.numbers(line), head[0]);
        if (e.empty())
            r.fail("empty edge");
        edges.push_back(std::move(e));
    }
    return Hypergraph(head[0], std::move(edges));
}

} // namespace

std::string write_nhg(const Hypergraph& h)
{
    std::ostringstream out;
    out << "nhg 1\n" << h.vertex_count() << ' ' << h.edge_count() << '\n';
    auto edges = h.edges();
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges)
        out << join(e) << '\n';
    return out.str();
}

Hypergraph read_nhg(std::istream& in)
{
    LineReader r(in);
    r.header("nhg");
    return read_nhg_body(r);
}

std::string write_labels(const LabelTable& labels)
{
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        out += std::to_string(i) + ' ' + labels[i] + '\n';
    return out;
}

LabelTable read_labels(std::istream& in, std::size_t n)
{
    LineReader r(in);
    LabelTable out(n);
    std::vector<char> seen(n, 0);
    while (r.more()) {
        auto line = r.next("a label");
        if (line.empty())
            continue;
        auto sp = line.find(' ');
        auto idx = r.numbers(line.substr(0, sp));
        if (idx.size() != 1 || idx[0] >= n)
            r.fail("bad vertex index");
        if (seen[idx[0]]++)
            r.fail("duplicate label for vertex " + std::to_string(idx[0]));
        out[idx[0]] = sp == std::string::npos ? "" : line.substr(sp + 1);
    }
    return out;
}

std::string write_nfb(const FiberBundle& b)
{
    std::ostringstream out;
    out << "nfb 1\n" << b.fiber_size() << ' ' << b.r_gamma() << '\n' << write_nhg(b.base());
    for (Vertex v = 0; v < b.base().vertex_count(); ++v) {
        auto edges = b.fiber_edges(v);
        out << v << ' ' << edges.size() << '\n';
        for (const auto& e : edges)
            out << join(e) << '\n';
    }
    return out.str();
}

FiberBundle read_nfb(std::istream& in, const std::filesystem::path& base_dir)
{
    LineReader r(in);
    r.header("nfb");
    auto head = r.exactly("<|F|> <r_gamma>", 2);
    Hypergraph base;
    if (in.peek() == '@') {
        auto ref = r.next("a base reference").substr(1);
        base = load_nhg(base_dir / ref);
    } else {
        r.header("nhg");
        base = read_nhg_body(r);
    }
    std::vector<std::vector<Edge>> gamma(base.vertex_count());
    for (Vertex v = 0; v < base.vertex_count(); ++v) {
        auto vh = r.exactly("<vertex> <count>", 2);
        if (vh[0] != v)
            r.fail("fiber blocks must list base vertices in order, expected " + std::to_string(v));
        for (std::uint64_t i = 0; i < vh[1]; ++i) {
            auto line = r.next("a fiber edge");
            auto e = as_edge(r, r.numbers(line), head[0]);
            if (e.size() != head[1] || !std::is_sorted(e.begin(), e.end()) ||
                std::adjacent_find(e.begin(), e.end()) != e.end())
                r.fail("fiber edges must be sorted " + std::to_string(head[1]) + "-sets");
            gamma[v].push_back(std::move(e));
        }
    }
    return FiberBundle(std::move(base), head[0], head[1], gamma);
}

std::string write_nsf(const SetFamily& fam)
{
    std::ostringstream out;
    out << "nsf 1\n" << fam.ground() << ' ' << fam.size() << '\n';
    for (const auto& s : fam.as_sets())
        out << join(s) << '\n';
    return out.str();
}

SetFamily read_nsf(std::istream& in)
{
    LineReader r(in);
    r.header("nsf");
    auto head = r.exactly("<n> <count>", 2);
    if (head[0] > 63)
        r.fail("ground set limited to 63 elements");
    std::vector<VertexSet> sets;
    for (std::uint64_t i = 0; i < head[1]; ++i) {
        auto line = r.next("a member");
        sets.push_back(as_edge(r, r.numbers(line), head[0]));
    }
    return SetFamily::from_sets(head[0], sets);
}

std::string write_cut(const Cut& cut)
{
    std::string out = "X";
    for (Vertex v : cut.x)
        out += ' ' + std::to_string(v);
    out += '\n';
    for (const auto& p : cut.s)
        out += "S " + join(p) + '\n';
    return out;
}

Cut read_cut(std::istream& in)
{
    LineReader r(in);
    Cut cut;
    auto first = r.next("the X line");
    if (first.rfind("X", 0) != 0)
        r.fail("expected the X line");
    for (auto v : r.numbers(first.substr(1)))
        cut.x.push_back(static_cast<Vertex>(v));
    while (r.more()) {
        auto line = r.next("an S line");
        if (line.rfind("S ", 0) != 0)
            r.fail("expected \"S u v\"");
        Edge e;
        for (auto v : r.numbers(line.substr(2)))
            e.push_back(static_cast<Vertex>(v));
        cut.s.push_back(std::move(e));
    }
    return cut;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::ParseError, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::ParseError, "cannot write " + path.string());
    out << text;
}

Hypergraph load_nhg(const std::filesystem::path& path)
{
    std::istringstream in(read_file(path));
    return read_nhg(in);
}

FiberBundle load_nfb(const std::filesystem::path& path)
{
    std::istringstream in(read_file(path));
    return read_nfb(in, path.parent_path());
}

SetFamily load_nsf(const std::filesystem::path& path)
{
    std::istringstream in(read_file(path));
    return read_nsf(in);
}

} // namespace hyperchrom
