#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gnet {

// Closed four-letter alphabet. Ambiguity codes are rejected at parse time so
// everything downstream can assume pure A/C/G/T content.
enum class Nucleotide : std::uint8_t { A = 0, C = 1, G = 2, T = 3 };

char to_char(Nucleotide b);

// Accepts upper- or lowercase; anything outside acgtACGT is rejected.
std::optional<Nucleotide> nucleotide_from_char(char c);

struct GeneSequence {
    std::string id;
    std::vector<Nucleotide> bases;

    std::size_t length() const { return bases.size(); }
    bool operator==(const GeneSequence&) const = default;
};

enum class GroupLabel : std::uint8_t { control = 0, patient = 1 };

std::string_view to_string(GroupLabel label);
GroupLabel group_label_from_string(std::string_view s);

// One individual: an ordered list of gene sequences, one per network gene.
// Gene order must be identical across all samples of a cohort.
struct NetworkSample {
    std::string sample_id;
    GroupLabel label = GroupLabel::control;
    std::vector<GeneSequence> genes;
};

class FastaError : public std::runtime_error {
  public:
    explicit FastaError(const std::string& what) : std::runtime_error(what) {}
};

// FASTA ingestion. Lowercase folds to uppercase, whitespace inside sequence
// lines is ignored, record order is preserved. Empty input yields an empty
// list. Throws FastaError on sequence data before the first header or on any
// character outside the four-letter alphabet (reported with record id and
// 0-based base index).
std::vector<GeneSequence> parse_fasta(std::istream& in);
std::vector<GeneSequence> parse_fasta(std::string_view text);

// Emission; wrapped at line_width bases per line. Round-trips through
// parse_fasta to identical records.
void write_fasta(std::ostream& out, const std::vector<GeneSequence>& records,
                 std::size_t line_width = 80);
std::string fasta_to_string(const std::vector<GeneSequence>& records,
                            std::size_t line_width = 80);

std::vector<GeneSequence> read_fasta_file(const std::string& path);
void write_fasta_file(const std::string& path,
                      const std::vector<GeneSequence>& records,
                      std::size_t line_width = 80);

}  // namespace gnet
