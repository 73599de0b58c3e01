#include "gnet/sequence.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace gnet {

char to_char(Nucleotide b) {
    static constexpr char table[4] = {'A', 'C', 'G', 'T'};
    return table[static_cast<std::uint8_t>(b)];
}

std::optional<Nucleotide> nucleotide_from_char(char c) {
    switch (c) {
        case 'A': case 'a': return Nucleotide::A;
        case 'C': case 'c': return Nucleotide::C;
        case 'G': case 'g': return Nucleotide::G;
        case 'T': case 't': return Nucleotide::T;
        default: return std::nullopt;
    }
}

std::string_view to_string(GroupLabel label) {
    return label == GroupLabel::control ? "control" : "patient";
}

GroupLabel group_label_from_string(std::string_view s) {
    if (s == "control") return GroupLabel::control;
    if (s == "patient") return GroupLabel::patient;
    throw std::invalid_argument("unknown group label: " + std::string(s));
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

std::vector<GeneSequence> parse_fasta(std::istream& in) {
    std::vector<GeneSequence> records;
    bool have_record = false;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '>') {
            std::string id = trim(std::string_view(line).substr(1));
            if (id.empty()) {
                throw FastaError("FASTA record " + std::to_string(records.size()) +
                                 ": empty header id");
            }
            records.push_back(GeneSequence{std::move(id), {}});
            have_record = true;
            continue;
        }
        if (!have_record) {
            throw FastaError("sequence data before first FASTA header");
        }
        GeneSequence& rec = records.back();
        for (char c : line) {
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            auto base = nucleotide_from_char(c);
            if (!base) {
                throw FastaError("illegal character '" + std::string(1, c) +
                                 "' at base index " + std::to_string(rec.bases.size()) +
                                 " of record '" + rec.id + "'");
            }
            rec.bases.push_back(*base);
        }
    }
    return records;
}

std::vector<GeneSequence> parse_fasta(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_fasta(in);
}

void write_fasta(std::ostream& out, const std::vector<GeneSequence>& records,
                 std::size_t line_width) {
    if (line_width < 1) {
        throw std::invalid_argument("write_fasta: line_width must be >= 1");
    }
    for (const GeneSequence& rec : records) {
        out << '>' << rec.id << '\n';
        for (std::size_t i = 0; i < rec.bases.size(); i += line_width) {
            const std::size_t n = std::min(line_width, rec.bases.size() - i);
            for (std::size_t j = 0; j < n; ++j) out << to_char(rec.bases[i + j]);
            out << '\n';
        }
    }
}

std::string fasta_to_string(const std::vector<GeneSequence>& records,
                            std::size_t line_width) {
    std::ostringstream out;
    write_fasta(out, records, line_width);
    return out.str();
}

std::vector<GeneSequence> read_fasta_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FastaError("cannot open FASTA file: " + path);
    return parse_fasta(in);
}

void write_fasta_file(const std::string& path,
                      const std::vector<GeneSequence>& records,
                      std::size_t line_width) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FastaError("cannot write FASTA file: " + path);
    write_fasta(out, records, line_width);
}

}  // namespace gnet
