#include "propel/textio.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace propel {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // Next non-blank line; throws at end of input.
    std::string next(const char* expecting) {
        std::string line;
        while (std::getline(in_, line)) {
            ++number_;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
        }
        throw ParseError(number_ + 1, std::string("unexpected end of input, expected ") + expecting);
    }

    std::vector<long long> numbers(const char* expecting) {
        const std::string line = next(expecting);
        std::istringstream ss(line);
        std::vector<long long> values;
        std::string token;
        while (ss >> token) {
            try {
                std::size_t used = 0;
                values.push_back(std::stoll(token, &used));
                if (used != token.size()) throw std::invalid_argument(token);
            } catch (const std::exception&) {
                throw ParseError(number_, "not an integer: '" + token + "'");
            }
        }
        return values;
    }

    void expect_end() {
        std::string line;
        while (std::getline(in_, line)) {
            ++number_;
            if (line.find_first_not_of(" \t\r") != std::string::npos) throw ParseError(number_, "trailing content");
        }
    }

    std::size_t line() const noexcept { return number_; }

private:
    std::istream& in_;
    std::size_t number_ = 0;
};

FieldContext parse_field(long long q, std::size_t line) {
    try {
        if (q < 2 || q > 255) throw std::invalid_argument("q must be a prime below 256");
        return FieldContext(static_cast<unsigned>(q));
    } catch (const std::invalid_argument& e) {
        throw ParseError(line, e.what());
    }
}

Element parse_element(const FieldContext& field, long long v, std::size_t line) {
    if (v < 0 || v >= static_cast<long long>(field.q())) {
        throw ParseError(line, "entry " + std::to_string(v) + " is not in {0.." + std::to_string(field.q() - 1) + "}");
    }
    return static_cast<Element>(v);
}

}  // namespace

void write_matrix(std::ostream& out, const FqMatrix& m) {
    out << m.field.q() << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << static_cast<unsigned>(m(i, j));
        out << '\n';
    }
}

FqMatrix read_matrix(std::istream& in) {
    LineReader reader(in);
    const auto header = reader.numbers("header 'q rows cols'");
    if (header.size() != 3 || header[1] < 0 || header[2] < 0) throw ParseError(reader.line(), "header must be 'q rows cols'");
    const FieldContext field = parse_field(header[0], reader.line());
    FqMatrix m(field, header[1], header[2]);
    for (Index i = 0; i < m.rows(); ++i) {
        const auto row = reader.numbers("matrix row");
        if (static_cast<Index>(row.size()) != m.cols()) {
            throw ParseError(reader.line(), "expected " + std::to_string(m.cols()) + " entries");
        }
        for (Index j = 0; j < m.cols(); ++j) m(i, j) = parse_element(field, row[static_cast<std::size_t>(j)], reader.line());
    }
    reader.expect_end();
    return m;
}

void write_perm(std::ostream& out, const PermTable& tau) {
    out << tau.q() << ' ' << tau.r() << '\n';
    for (std::uint32_t k = 0; k < tau.size(); ++k) out << (k ? " " : "") << tau(k);
    out << '\n';
}

PermTable read_perm(std::istream& in) {
    LineReader reader(in);
    const auto header = reader.numbers("header 'q r'");
    if (header.size() != 2 || header[1] < 1 || header[1] > 64) throw ParseError(reader.line(), "header must be 'q r'");
    const std::size_t header_line = reader.line();
    const FieldContext field = parse_field(header[0], header_line);
    const auto values = reader.numbers("permutation images");
    std::vector<std::uint32_t> images;
    images.reserve(values.size());
    for (long long v : values) {
        if (v < 0 || v > 0xFFFFFFFFLL) throw ParseError(reader.line(), "image index out of range");
        images.push_back(static_cast<std::uint32_t>(v));
    }
    const std::size_t images_line = reader.line();
    reader.expect_end();
    try {
        return PermTable(field, static_cast<unsigned>(header[1]), std::move(images));
    } catch (const std::invalid_argument& e) {
        throw ParseError(images_line, e.what());
    }
}

void write_subgroup(std::ostream& out, const RegularSubgroup& group) {
    out << group.q() << ' ' << group.r() << '\n';
    for (std::uint32_t k = 0; k < group.order(); ++k) {
        const FqMatrix& m = group.matrix(k);
        for (Index t = 0; t < m.entries.size(); ++t) out << (t ? " " : "") << static_cast<unsigned>(m.entries.data()[t]);
        out << '\n';
    }
}

RegularSubgroup read_subgroup(std::istream& in) {
    LineReader reader(in);
    const auto header = reader.numbers("header 'q r'");
    if (header.size() != 2 || header[1] < 1 || header[1] > 64) throw ParseError(reader.line(), "header must be 'q r'");
    const FieldContext field = parse_field(header[0], reader.line());
    const unsigned r = static_cast<unsigned>(header[1]);
    std::uint32_t order = 0;
    try {
        order = VectorIndexing(field, r).size();
    } catch (const std::invalid_argument& e) {
        throw ParseError(reader.line(), e.what());
    }
    std::vector<FqMatrix> matrices;
    matrices.reserve(order);
    for (std::uint32_t k = 0; k < order; ++k) {
        const auto values = reader.numbers("subgroup matrix");
        if (values.size() != static_cast<std::size_t>(r) * r) {
            throw ParseError(reader.line(), "expected " + std::to_string(r * r) + " matrix entries");
        }
        FqMatrix m(field, r, r);
        for (std::size_t t = 0; t < values.size(); ++t) m.entries.data()[t] = parse_element(field, values[t], reader.line());
        matrices.push_back(std::move(m));
    }
    reader.expect_end();
    return RegularSubgroup(field, r, std::move(matrices));
}

void write_codewords(std::ostream& out, const CodeHandle& code, const std::string& tau_label,
                     std::uint64_t max_codewords) {
    if (code.q() > 9) throw std::invalid_argument("codeword files need single-digit symbols (q <= 9)");
    out << "# " << code.q() << ' ' << code.r() << ' ' << code.length() << " tau=" << tau_label << '\n';
    std::string line(static_cast<std::size_t>(code.length()) + 1, '\n');
    enumerate(code, [&](std::span<const Element> w) {
        for (std::size_t k = 0; k < w.size(); ++k) line[k] = static_cast<char>('0' + w[k]);
        out << line;
    }, max_codewords);
}

void write_certificate(std::ostream& out, const PropelinearCertificate& cert, unsigned q) {
    nlohmann::ordered_json doc;
    doc["q"] = q;
    doc["length"] = cert.empty() ? 0 : cert.begin()->first.size();
    doc["entries"] = nlohmann::ordered_json::array();
    for (const auto& [word, phi] : cert) {
        std::string key;
        for (Element e : word) key += std::to_string(e) + (q > 9 ? "," : "");
        if (q > 9 && !key.empty()) key.pop_back();
        nlohmann::ordered_json entry;
        entry["codeword"] = key;
        entry["sigma"] = phi.sigma;
        nlohmann::ordered_json pis = nlohmann::ordered_json::array();
        for (const auto& pi : phi.pis) {
            std::vector<unsigned> wide(pi.begin(), pi.end());
            pis.push_back(wide);
        }
        entry["pis"] = std::move(pis);
        doc["entries"].push_back(std::move(entry));
    }
    out << doc.dump() << '\n';
}

PropelinearCertificate read_certificate(std::istream& in, unsigned q) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, std::string("certificate is not valid JSON: ") + e.what());
    }
    PropelinearCertificate cert;
    try {
        if (doc.at("q").get<unsigned>() != q) throw ParseError(0, "certificate field does not match --q");
        const std::size_t length = doc.at("length").get<std::size_t>();
        for (const auto& entry : doc.at("entries")) {
            const std::string text = entry.at("codeword").get<std::string>();
            CodewordKey key;
            if (q > 9) {
                std::istringstream ss(text);
                std::string tok;
                while (std::getline(ss, tok, ',')) key.push_back(static_cast<Element>(std::stoul(tok)));
            } else {
                for (char c : text) {
                    if (c < '0' || c >= static_cast<char>('0' + q)) throw ParseError(0, "bad codeword symbol in certificate");
                    key.push_back(static_cast<Element>(c - '0'));
                }
            }
            if (key.size() != length) throw ParseError(0, "certificate codeword has wrong length");
            Isometry phi;
            phi.sigma = entry.at("sigma").get<std::vector<std::uint32_t>>();
            for (const auto& pi : entry.at("pis")) {
                const auto wide = pi.get<std::vector<unsigned>>();
                for (unsigned v : wide) {
                    if (v >= q) throw ParseError(0, "symbol permutation entry out of range");
                }
                phi.pis.emplace_back(wide.begin(), wide.end());
            }
            cert.emplace(std::move(key), std::move(phi));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("malformed certificate: ") + e.what());
    }
    return cert;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace propel
