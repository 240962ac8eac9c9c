#pragma once
// On-disk dataset layout: manifest.jsonl plus images/<id>.svg.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "polarbench/taskgen.hpp"

namespace polarbench {

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(std::string_view bytes);

/// One manifest line for `inst`; image_path is relative to the dataset root.
nlohmann::json manifest_record(const Instance& inst);

/// Writes manifest.jsonl and the image tree, replacing whatever a previous run
/// left there. Returns the manifest path.
std::filesystem::path write_dataset(const Dataset& ds, const std::filesystem::path& out_dir);
std::filesystem::path write_dataset(const std::vector<const Instance*>& instances,
                                    const std::filesystem::path& out_dir);

struct ManifestEntry {
  Instance instance;  // svg is empty when the image could not be read
  std::filesystem::path image_path;
  std::string image_sha256;
  std::string image_problem;  // empty when the image exists and matches its digest
};

/// Parses every manifest line. Malformed lines throw DatasetError naming the
/// line; image problems are reported per entry.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& dir);

/// Like read_manifest but any image problem is an error.
std::vector<Instance> read_dataset(const std::filesystem::path& dir);

Instance instance_from_record(const nlohmann::json& rec, std::string svg);

/// Expected accuracy (percent) of a uniform random answerer over `sample`.
double random_baseline(const TaskSpec& task, const std::vector<const Instance*>& sample);

/// Size of the answer space a random answerer draws from; 0 when unbounded.
size_t answer_domain_size(const TaskSpec& task, const Instance& inst);

}  // namespace polarbench
