#include "ktj/ktg_dsl.hpp"

#include <sstream>

#include "ktj/errors.hpp"

namespace ktj {

namespace {

struct Tok {
    std::string text;
    int col = 0;
};

std::vector<Tok> tokenize_line(const std::string& line) {
    std::vector<Tok> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' &&
               line[j] != '#')
            ++j;
        toks.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return toks;
}

int parse_id(const Tok& t, char prefix, int line) {
    if (t.text.size() < 2 || t.text[0] != prefix)
        throw ParseError(std::string("expected ") + prefix + "<id>, got '" + t.text + "'", line,
                         t.col);
    for (std::size_t i = 1; i < t.text.size(); ++i)
        if (!isdigit(static_cast<unsigned char>(t.text[i])))
            throw ParseError("bad id '" + t.text + "'", line, t.col);
    return std::stoi(t.text.substr(1));
}

int parse_rings(const Tok& t, int line) {
    const std::string key = "rings=";
    if (t.text.rfind(key, 0) != 0)
        throw ParseError("expected rings=<n>, got '" + t.text + "'", line, t.col);
    std::string v = t.text.substr(key.size());
    if (v.empty()) throw ParseError("missing ring count", line, t.col);
    for (char c : v)
        if (!isdigit(static_cast<unsigned char>(c)))
            throw ParseError("bad ring count '" + v + "'", line, t.col);
    return std::stoi(v);
}

} // namespace

MoveSequence parse_sequence(const std::string& text) {
    MoveSequence seq;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize_line(line);
        if (toks.empty()) continue;
        if (!saw_header) {
            if (toks[0].text != "tet")
                throw ParseError("expected 'tet' header", lineno, toks[0].col);
            if (toks.size() > 1)
                throw ParseError("unexpected token after 'tet'", lineno, toks[1].col);
            saw_header = true;
            continue;
        }
        const std::string& op = toks[0].text;
        Move m{};
        m.line = lineno;
        if (op == "A") {
            if (toks.size() != 2) throw ParseError("A takes one vertex id", lineno, toks[0].col);
            m.kind = Move::Kind::Triangle;
            m.target = parse_id(toks[1], 'v', lineno);
        } else if (op == "H+" || op == "H-") {
            if (toks.size() != 2) throw ParseError("H takes one edge id", lineno, toks[0].col);
            m.kind = Move::Kind::HalfTwist;
            m.sign = op == "H+" ? 1 : -1;
            m.target = parse_id(toks[1], 'e', lineno);
        } else if (op == "U") {
            if (toks.size() < 2 || toks.size() > 3)
                throw ParseError("U takes an edge id and optional rings=<n>", lineno, toks[0].col);
            m.kind = Move::Kind::Unzip;
            m.target = parse_id(toks[1], 'e', lineno);
            if (toks.size() == 3) m.rings = parse_rings(toks[2], lineno);
        } else {
            throw ParseError("unknown move '" + op + "'", lineno, toks[0].col);
        }
        seq.moves.push_back(m);
    }
    if (!saw_header) throw ParseError("missing 'tet' header", std::max(lineno, 1), 1);
    replay_sequence(seq); // target validation; throws with the move's line
    return seq;
}

std::string serialize(const MoveSequence& seq) {
    std::ostringstream out;
    out << "tet\n";
    for (const auto& m : seq.moves) {
        switch (m.kind) {
            case Move::Kind::Triangle: out << "A v" << m.target << "\n"; break;
            case Move::Kind::HalfTwist:
                out << (m.sign > 0 ? "H+ e" : "H- e") << m.target << "\n";
                break;
            case Move::Kind::Unzip:
                out << "U e" << m.target;
                if (m.rings > 0) out << " rings=" << m.rings;
                out << "\n";
                break;
        }
    }
    return out.str();
}

} // namespace ktj
