#include "gnet/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gnet {

namespace {

using nlohmann::json;

constexpr std::uint64_t kGeneStream = 0xDA7A;

std::string sanitize_filename(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '_';
        out.push_back(ok ? c : '_');
    }
    return out;
}

int exact_carrier_count(double frequency, int n_samples) {
    return static_cast<int>(std::llround(frequency * n_samples));
}

}  // namespace

void CohortSpec::validate() const {
    auto check_frequency = [](double f, const char* name) {
        if (!(f >= 0.0 && f <= 1.0)) {
            throw std::invalid_argument(std::string("CohortSpec: ") + name +
                                        " must be in [0,1]");
        }
    };
    check_frequency(maf_polymorphic, "maf_polymorphic");
    check_frequency(maf_pathogenic_control, "maf_pathogenic_control");
    check_frequency(maf_pathogenic_patient, "maf_pathogenic_patient");
    if (poly_interval < 1 || patho_interval < 1) {
        throw std::invalid_argument("CohortSpec: intervals must be >= 1");
    }
    if (n_control < 0 || n_patient < 0) {
        throw std::invalid_argument("CohortSpec: sample counts must be >= 0");
    }
    if (references.empty()) {
        throw std::invalid_argument("CohortSpec: at least one reference gene required");
    }
    for (const GeneSequence& g : references) {
        if (g.id.empty()) {
            throw std::invalid_argument("CohortSpec: reference gene with empty id");
        }
    }
}

PositionLists sample_position_lists(std::int64_t gene_length,
                                    std::int64_t poly_interval,
                                    std::int64_t patho_interval, Rng& rng) {
    if (poly_interval < 1 || patho_interval < 1) {
        throw std::invalid_argument("sample_position_lists: intervals must be >= 1");
    }
    PositionLists lists;

    // one draw per complete window [k*w+1, (k+1)*w]
    for (std::int64_t hi = poly_interval; hi <= gene_length; hi += poly_interval) {
        lists.polymorphic.push_back(rng.range(hi - poly_interval + 1, hi));
    }

    std::set<std::int64_t> taken(lists.polymorphic.begin(), lists.polymorphic.end());
    for (std::int64_t hi = patho_interval; hi <= gene_length; hi += patho_interval) {
        const std::int64_t lo = hi - patho_interval + 1;
        std::int64_t pos = rng.range(lo, hi);
        int attempts = 0;
        while (taken.count(pos) && ++attempts <= 64) {
            pos = rng.range(lo, hi);
        }
        if (taken.count(pos)) {
            // window saturated by the other list; pick uniformly among the
            // free slots, or fail if there are none
            std::vector<std::int64_t> free_slots;
            for (std::int64_t p = lo; p <= hi; ++p) {
                if (!taken.count(p)) free_slots.push_back(p);
            }
            if (free_slots.empty()) {
                throw std::runtime_error(
                    "sample_position_lists: disjoint lists impossible in window [" +
                    std::to_string(lo) + "," + std::to_string(hi) + "]");
            }
            pos = free_slots[rng.below(free_slots.size())];
        }
        lists.pathogenic.push_back(pos);
    }
    return lists;
}

GeneSequence generate_reference(const std::string& id, std::int64_t length,
                                Rng& rng) {
    if (length < 1) {
        throw std::invalid_argument("generate_reference: length must be >= 1");
    }
    GeneSequence seq{id, {}};
    seq.bases.reserve(static_cast<std::size_t>(length));
    for (std::int64_t i = 0; i < length; ++i) {
        seq.bases.push_back(static_cast<Nucleotide>(rng.below(4)));
    }
    return seq;
}

std::vector<int> assign_carriers(int n_samples, double frequency, Rng& rng) {
    if (n_samples < 0) {
        throw std::invalid_argument("assign_carriers: n_samples must be >= 0");
    }
    const int count = exact_carrier_count(frequency, n_samples);
    auto idx = rng.sample_indices(static_cast<std::size_t>(n_samples),
                                  static_cast<std::size_t>(count));
    return {idx.begin(), idx.end()};
}

namespace {

SitePlan plan_site(const GeneSequence& reference, std::int64_t position,
                   double control_frequency, double patient_frequency,
                   int n_control, int n_patient, Rng& rng) {
    SitePlan site;
    site.position = position;
    site.ref = reference.bases[static_cast<std::size_t>(position - 1)];
    // one fixed alternate allele per site, uniform over the three
    // non-reference bases
    const auto shift = 1 + rng.below(3);
    site.alt = static_cast<Nucleotide>(
        (static_cast<std::uint64_t>(site.ref) + shift) % 4);
    site.control_carriers = assign_carriers(n_control, control_frequency, rng);
    site.patient_carriers = assign_carriers(n_patient, patient_frequency, rng);
    return site;
}

}  // namespace

CohortPlan build_cohort_plan(const CohortSpec& spec) {
    spec.validate();
    CohortPlan plan;
    plan.spec = spec;
    plan.genes.resize(spec.references.size());

    for (std::size_t g = 0; g < spec.references.size(); ++g) {
        const GeneSequence& ref = spec.references[g];
        Rng rng(derive_seed(spec.seed, kGeneStream, g));
        GenePlan& gene = plan.genes[g];
        gene.positions = sample_position_lists(
            static_cast<std::int64_t>(ref.length()), spec.poly_interval,
            spec.patho_interval, rng);
        for (std::int64_t pos : gene.positions.polymorphic) {
            gene.polymorphic_sites.push_back(
                plan_site(ref, pos, spec.maf_polymorphic, spec.maf_polymorphic,
                          spec.n_control, spec.n_patient, rng));
        }
        for (std::int64_t pos : gene.positions.pathogenic) {
            gene.pathogenic_sites.push_back(plan_site(
                ref, pos, spec.maf_pathogenic_control, spec.maf_pathogenic_patient,
                spec.n_control, spec.n_patient, rng));
        }
    }
    return plan;
}

std::string sample_id_for(GroupLabel label, int index_in_group) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s_%04d", to_string(label).data(),
                  index_in_group + 1);
    return buf;
}

NetworkSample materialize_sample(const CohortPlan& plan, int sample_index) {
    if (sample_index < 0 || sample_index >= plan.sample_count()) {
        throw std::out_of_range("materialize_sample: sample index out of range");
    }
    const GroupLabel label = plan.label_of(sample_index);
    const int in_group = label == GroupLabel::control
                             ? sample_index
                             : sample_index - plan.spec.n_control;

    NetworkSample sample;
    sample.sample_id = sample_id_for(label, in_group);
    sample.label = label;
    sample.genes.reserve(plan.genes.size());

    for (std::size_t g = 0; g < plan.genes.size(); ++g) {
        GeneSequence seq = plan.spec.references[g];
        auto apply = [&](const std::vector<SitePlan>& sites) {
            for (const SitePlan& site : sites) {
                const auto& carriers = label == GroupLabel::control
                                           ? site.control_carriers
                                           : site.patient_carriers;
                if (std::binary_search(carriers.begin(), carriers.end(), in_group)) {
                    seq.bases[static_cast<std::size_t>(site.position - 1)] = site.alt;
                }
            }
        };
        apply(plan.genes[g].polymorphic_sites);
        apply(plan.genes[g].pathogenic_sites);
        sample.genes.push_back(std::move(seq));
    }
    return sample;
}

Cohort generate_cohort(const CohortSpec& spec) {
    const CohortPlan plan = build_cohort_plan(spec);
    Cohort cohort;
    cohort.spec = spec;
    for (const GenePlan& gene : plan.genes) {
        cohort.position_lists.push_back(gene.positions);
    }
    cohort.samples.reserve(static_cast<std::size_t>(plan.sample_count()));
    for (int i = 0; i < plan.sample_count(); ++i) {
        cohort.samples.push_back(materialize_sample(plan, i));
    }
    return cohort;
}

CohortAudit cohort_audit(const Cohort& cohort) {
    if (cohort.samples.empty()) {
        throw std::invalid_argument("cohort_audit: empty cohort");
    }
    CohortAudit audit;
    const CohortSpec& spec = cohort.spec;

    for (std::size_t g = 0; g < spec.references.size(); ++g) {
        const GeneSequence& ref = spec.references[g];
        auto audit_positions = [&](const std::vector<std::int64_t>& positions,
                                   bool pathogenic, double f_control,
                                   double f_patient) {
            for (std::int64_t pos : positions) {
                SiteAudit site;
                site.gene_id = ref.id;
                site.position = pos;
                site.pathogenic = pathogenic;
                for (const NetworkSample& s : cohort.samples) {
                    const Nucleotide base =
                        s.genes[g].bases[static_cast<std::size_t>(pos - 1)];
                    if (base != ref.bases[static_cast<std::size_t>(pos - 1)]) {
                        (s.label == GroupLabel::control ? site.control_carriers
                                                        : site.patient_carriers)++;
                    }
                }
                site.control_fraction =
                    spec.n_control > 0
                        ? static_cast<double>(site.control_carriers) / spec.n_control
                        : 0.0;
                site.patient_fraction =
                    spec.n_patient > 0
                        ? static_cast<double>(site.patient_carriers) / spec.n_patient
                        : 0.0;
                site.expected_control = exact_carrier_count(f_control, spec.n_control);
                site.expected_patient = exact_carrier_count(f_patient, spec.n_patient);
                site.deviates = site.control_carriers != site.expected_control ||
                                site.patient_carriers != site.expected_patient;
                if (site.deviates) ++audit.deviating;
                audit.sites.push_back(std::move(site));
            }
        };
        audit_positions(cohort.position_lists[g].polymorphic, false,
                        spec.maf_polymorphic, spec.maf_polymorphic);
        audit_positions(cohort.position_lists[g].pathogenic, true,
                        spec.maf_pathogenic_control, spec.maf_pathogenic_patient);
    }
    return audit;
}

// --- cohort directory persistence ----------------------------------------

namespace {

std::string positions_file_name(std::size_t gene_index, const std::string& gene_id) {
    return "positions/" + std::to_string(gene_index) + "_" +
           sanitize_filename(gene_id) + ".txt";
}

void write_positions_file(const std::filesystem::path& path,
                          const PositionLists& lists) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write positions file: " + path.string());
    }
    out << "polymorphic:";
    for (auto p : lists.polymorphic) out << ' ' << p;
    out << "\npathogenic:";
    for (auto p : lists.pathogenic) out << ' ' << p;
    out << '\n';
}

PositionLists read_positions_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read positions file: " + path.string());
    }
    PositionLists lists;
    std::string line;
    auto parse_line = [&](const char* prefix, std::vector<std::int64_t>& dst) {
        if (!std::getline(in, line) || line.rfind(prefix, 0) != 0) {
            throw std::runtime_error("malformed positions file: " + path.string());
        }
        std::istringstream fields(line.substr(std::string(prefix).size()));
        std::int64_t v;
        while (fields >> v) dst.push_back(v);
    };
    parse_line("polymorphic:", lists.polymorphic);
    parse_line("pathogenic:", lists.pathogenic);
    return lists;
}

}  // namespace

void write_cohort_dir(const CohortPlan& plan, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir / "positions");
    fs::create_directories(dir / "samples");

    const CohortSpec& spec = plan.spec;
    write_fasta_file((dir / "references.fa").string(), spec.references);

    json manifest;
    manifest["format"] = "gnet-cohort";
    manifest["version"] = 1;
    manifest["seed"] = spec.seed;
    manifest["n_control"] = spec.n_control;
    manifest["n_patient"] = spec.n_patient;
    manifest["maf_polymorphic"] = spec.maf_polymorphic;
    manifest["maf_pathogenic_control"] = spec.maf_pathogenic_control;
    manifest["maf_pathogenic_patient"] = spec.maf_pathogenic_patient;
    manifest["poly_interval"] = spec.poly_interval;
    manifest["patho_interval"] = spec.patho_interval;

    json genes = json::array();
    for (std::size_t g = 0; g < spec.references.size(); ++g) {
        const std::string pos_file = positions_file_name(g, spec.references[g].id);
        genes.push_back({{"id", spec.references[g].id},
                         {"length", spec.references[g].length()},
                         {"positions_file", pos_file}});
        write_positions_file(dir / pos_file, plan.genes[g].positions);
    }
    manifest["genes"] = std::move(genes);

    json samples = json::array();
    for (int i = 0; i < plan.sample_count(); ++i) {
        const NetworkSample sample = materialize_sample(plan, i);
        const std::string file = "samples/" + sample.sample_id + ".fa";
        write_fasta_file((dir / file).string(), sample.genes);
        samples.push_back({{"id", sample.sample_id},
                           {"label", std::string(to_string(sample.label))},
                           {"file", file}});
    }
    manifest["samples"] = std::move(samples);

    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write manifest: " +
                                 (dir / "manifest.json").string());
    }
    out << manifest.dump(2) << '\n';
}

CohortManifest load_cohort_manifest(const std::filesystem::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) {
        throw std::runtime_error("cannot read cohort manifest: " +
                                 (dir / "manifest.json").string());
    }
    json manifest = json::parse(in);
    if (manifest.value("format", "") != "gnet-cohort") {
        throw std::runtime_error("not a gnet cohort directory: " + dir.string());
    }

    CohortManifest result;
    CohortSpec& spec = result.spec;
    spec.seed = manifest.at("seed").get<std::uint64_t>();
    spec.n_control = manifest.at("n_control").get<int>();
    spec.n_patient = manifest.at("n_patient").get<int>();
    spec.maf_polymorphic = manifest.at("maf_polymorphic").get<double>();
    spec.maf_pathogenic_control = manifest.at("maf_pathogenic_control").get<double>();
    spec.maf_pathogenic_patient = manifest.at("maf_pathogenic_patient").get<double>();
    spec.poly_interval = manifest.at("poly_interval").get<std::int64_t>();
    spec.patho_interval = manifest.at("patho_interval").get<std::int64_t>();

    spec.references = read_fasta_file((dir / "references.fa").string());
    const auto& genes = manifest.at("genes");
    if (genes.size() != spec.references.size()) {
        throw std::runtime_error("cohort manifest gene table does not match references.fa");
    }
    for (std::size_t g = 0; g < genes.size(); ++g) {
        if (genes[g].at("id").get<std::string>() != spec.references[g].id) {
            throw std::runtime_error("cohort manifest gene order does not match references.fa");
        }
        result.position_lists.push_back(
            read_positions_file(dir / genes[g].at("positions_file").get<std::string>()));
    }

    for (const auto& s : manifest.at("samples")) {
        result.samples.push_back(
            {s.at("id").get<std::string>(),
             group_label_from_string(s.at("label").get<std::string>()),
             s.at("file").get<std::string>()});
    }
    if (result.samples.size() !=
        static_cast<std::size_t>(spec.n_control + spec.n_patient)) {
        throw std::runtime_error("cohort manifest sample count mismatch");
    }
    return result;
}

NetworkSample load_sample(const std::filesystem::path& dir,
                          const CohortManifest& manifest,
                          std::size_t sample_index) {
    const auto& entry = manifest.samples.at(sample_index);
    NetworkSample sample;
    sample.sample_id = entry.id;
    sample.label = entry.label;
    sample.genes = read_fasta_file((dir / entry.file).string());
    if (sample.genes.size() != manifest.spec.references.size()) {
        throw std::runtime_error("sample " + entry.id +
                                 ": gene count does not match cohort references");
    }
    return sample;
}

Cohort load_cohort_dir(const std::filesystem::path& dir) {
    const CohortManifest manifest = load_cohort_manifest(dir);
    Cohort cohort;
    cohort.spec = manifest.spec;
    cohort.position_lists = manifest.position_lists;
    cohort.samples.reserve(manifest.samples.size());
    for (std::size_t i = 0; i < manifest.samples.size(); ++i) {
        cohort.samples.push_back(load_sample(dir, manifest, i));
    }
    return cohort;
}

}  // namespace gnet
