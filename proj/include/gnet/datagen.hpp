#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gnet/rng.hpp"
#include "gnet/sequence.hpp"

namespace gnet {

// Per-gene variant site coordinates, 1-based. The two lists are disjoint and
// hold exactly one position per complete window of their interval width.
struct PositionLists {
    std::vector<std::int64_t> polymorphic;
    std::vector<std::int64_t> pathogenic;
};

// Generative description of a synthetic cohort: population-level base
// substitution on top of per-gene reference sequences, with common variants
// at equal frequency in both groups and disease-associated variants enriched
// in the patient group.
struct CohortSpec {
    std::vector<GeneSequence> references;
    int n_control = 0;
    int n_patient = 0;
    double maf_polymorphic = 0.40;
    double maf_pathogenic_control = 0.25;
    double maf_pathogenic_patient = 0.30;
    std::int64_t poly_interval = 100;
    std::int64_t patho_interval = 200;
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument on violation
};

// One variant site: a fixed alternate allele plus the carrier indices of each
// group (indices within the group, sorted).
struct SitePlan {
    std::int64_t position = 0;  // 1-based
    Nucleotide ref = Nucleotide::A;
    Nucleotide alt = Nucleotide::A;
    std::vector<int> control_carriers;
    std::vector<int> patient_carriers;
};

struct GenePlan {
    PositionLists positions;
    std::vector<SitePlan> polymorphic_sites;
    std::vector<SitePlan> pathogenic_sites;
};

// All randomness of a cohort, realized once. Samples are materialized from
// the plan on demand, which keeps paper-scale cohorts out of memory.
struct CohortPlan {
    CohortSpec spec;
    std::vector<GenePlan> genes;

    int sample_count() const { return spec.n_control + spec.n_patient; }
    GroupLabel label_of(int sample_index) const {
        return sample_index < spec.n_control ? GroupLabel::control
                                             : GroupLabel::patient;
    }
};

struct Cohort {
    std::vector<NetworkSample> samples;
    CohortSpec spec;
    std::vector<PositionLists> position_lists;  // one per gene
};

// One uniform-random position per complete window [k*w+1, (k+1)*w] for each
// list; pathogenic draws are redrawn within their window until disjoint from
// the polymorphic list. Trailing partial windows produce no position.
// Throws std::runtime_error when disjointness is impossible in some window.
PositionLists sample_position_lists(std::int64_t gene_length,
                                    std::int64_t poly_interval,
                                    std::int64_t patho_interval, Rng& rng);

// i.i.d. uniform bases; stand-in for a real reference sequence.
GeneSequence generate_reference(const std::string& id, std::int64_t length,
                                Rng& rng);

// Exactly round(frequency * n_samples) distinct indices, uniform without
// replacement, sorted.
std::vector<int> assign_carriers(int n_samples, double frequency, Rng& rng);

// Realizes all per-gene randomness: position lists, one alternate allele per
// site, carrier sets per group. Deterministic given spec.seed; gene g uses
// the sub-seed derive_seed(seed, g), so per-gene generation parallelizes
// without changing output.
CohortPlan build_cohort_plan(const CohortSpec& spec);

std::string sample_id_for(GroupLabel label, int index_in_group);

// Applies the plan's substitutions for one sample to the references.
NetworkSample materialize_sample(const CohortPlan& plan, int sample_index);

// Materializes every sample (controls first, then patients).
Cohort generate_cohort(const CohortSpec& spec);

// Carrier-frequency audit of a realized cohort against its spec.
struct SiteAudit {
    std::string gene_id;
    std::int64_t position = 0;
    bool pathogenic = false;
    int control_carriers = 0;
    int patient_carriers = 0;
    double control_fraction = 0.0;
    double patient_fraction = 0.0;
    int expected_control = 0;
    int expected_patient = 0;
    bool deviates = false;
};

struct CohortAudit {
    std::vector<SiteAudit> sites;
    int deviating = 0;
};

CohortAudit cohort_audit(const Cohort& cohort);

// --- cohort directory persistence ----------------------------------------
//
// layout:
//   manifest.json         counts, frequencies, seed, gene table, sample table
//   references.fa         one record per network gene, in gene order
//   positions/<gene>.txt  two labelled lines of sorted 1-based integers
//   samples/<id>.fa       one record per gene, in gene order

void write_cohort_dir(const CohortPlan& plan, const std::filesystem::path& dir);

struct CohortManifest {
    CohortSpec spec;  // references filled from references.fa
    struct Entry {
        std::string id;
        GroupLabel label;
        std::string file;  // relative to the cohort directory
    };
    std::vector<Entry> samples;
    std::vector<PositionLists> position_lists;
};

CohortManifest load_cohort_manifest(const std::filesystem::path& dir);

NetworkSample load_sample(const std::filesystem::path& dir,
                          const CohortManifest& manifest,
                          std::size_t sample_index);

Cohort load_cohort_dir(const std::filesystem::path& dir);

}  // namespace gnet
