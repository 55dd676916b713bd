#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "chronorec/tensor.hpp"

namespace chronorec {

/// One (user, item, value, timestamp) event. Value is a rating for explicit
/// data or a raw count for implicit data.
struct Interaction {
  std::string user;
  std::string item;
  double value = 0.0;
  std::int64_t timestamp = 0;
};

/// Item universe with binary attribute encodings. Attribute tokens are
/// namespaced ("genre:Drama"); the namespace defines the attribute group.
class ItemCatalog {
 public:
  ItemCatalog() = default;

  /// Build from parallel lists of item ids and their attribute tokens.
  static ItemCatalog build(std::vector<std::string> items,
                           const std::vector<std::vector<std::string>>& tokens);

  int num_items() const { return static_cast<int>(items_.size()); }
  int num_attributes() const { return static_cast<int>(attr_names_.size()); }
  int num_groups() const { return static_cast<int>(group_names_.size()); }

  const std::vector<std::string>& items() const { return items_; }
  const std::string& item_id(int idx) const { return items_[idx]; }
  int item_index(const std::string& id) const;  // -1 if unknown

  const std::vector<std::string>& attribute_names() const { return attr_names_; }
  const std::vector<std::string>& group_names() const { return group_names_; }
  int group_of_attribute(int attr) const { return attr_group_[attr]; }

  /// Binary encoding z_i of one item as a dense vector of length m.
  Tensor encoding(int item) const;
  /// All encodings stacked column-wise: Z is [m x n].
  const Tensor& encoding_matrix() const { return z_matrix_; }
  const std::vector<int>& active_attributes(int item) const {
    return item_attrs_[item];
  }

 private:
  std::vector<std::string> items_;
  std::unordered_map<std::string, int> item_index_;
  std::vector<std::string> attr_names_;
  std::unordered_map<std::string, int> attr_index_;
  std::vector<int> attr_group_;
  std::vector<std::string> group_names_;
  std::vector<std::vector<int>> item_attrs_;
  Tensor z_matrix_;
};

enum class ValueMode { explicit_rating, implicit_log };

/// One interaction after scaling, with the item resolved to its index.
struct Event {
  int item = 0;
  double value = 0.0;
  std::int64_t timestamp = 0;
};

/// Interactions bucketed into contiguous fixed-length periods (1-based, to
/// match t = 1..|H|), per user. Immutable once built.
class PeriodizedDataset {
 public:
  static PeriodizedDataset build(const std::vector<Interaction>& interactions,
                                 ItemCatalog catalog,
                                 std::int64_t period_seconds, ValueMode mode);

  int num_periods() const { return static_cast<int>(period_starts_.size()); }
  int num_users() const { return static_cast<int>(users_.size()); }
  int num_items() const { return catalog_.num_items(); }
  const ItemCatalog& catalog() const { return catalog_; }
  ValueMode value_mode() const { return mode_; }

  const std::vector<std::string>& users() const { return users_; }
  int user_index(const std::string& id) const;  // -1 if unknown

  /// Chronologically sorted events of one user in one period (1-based t).
  const std::vector<Event>& events(int period, int user) const;
  /// [start, end) timestamp range of a period.
  std::pair<std::int64_t, std::int64_t> period_range(int period) const;

  std::size_t total_events() const { return total_events_; }
  double value_min() const { return value_min_; }
  double value_max() const { return value_max_; }
  double value_mean() const { return value_mean_; }

 private:
  ItemCatalog catalog_;
  ValueMode mode_ = ValueMode::explicit_rating;
  std::vector<std::string> users_;
  std::unordered_map<std::string, int> user_index_;
  std::vector<std::int64_t> period_starts_;
  std::int64_t period_length_ = 0;
  // [period-1][user] -> sorted events
  std::vector<std::vector<std::vector<Event>>> events_;
  std::size_t total_events_ = 0;
  double value_min_ = 0.0, value_max_ = 0.0, value_mean_ = 0.0;
};

/// A user-period few-shot regression problem. Support holds the earliest
/// min(K, N_t) interactions of the period, query the rest.
struct Task {
  int user = 0;
  int period = 0;
  std::vector<Event> support;
  std::vector<Event> query;
};

struct UserSplit {
  std::vector<int> meta_train;
  std::vector<int> meta_test;
};

struct IngestResult {
  std::vector<Interaction> interactions;
  ItemCatalog catalog;
  std::vector<std::string> warnings;
};

/// Parse interaction and attribute files. Malformed lines raise ParseError
/// with the file and line number; interactions naming unknown items are
/// dropped and reported in warnings; duplicate (user,item,timestamp) rows
/// are kept with a warning.
IngestResult ingest(const std::string& interactions_path,
                    const std::string& attributes_path);

void write_interactions_csv(const std::string& path,
                            const std::vector<Interaction>& interactions);
void write_attributes_csv(const std::string& path, const ItemCatalog& catalog);

/// Meta-train users have >= min_train_interactions events in period t;
/// meta-test users have 1..cold_max events in t plus at least one earlier
/// event. The sets are disjoint.
UserSplit split_users(const PeriodizedDataset& data, int period, int K,
                      int min_train_interactions, int cold_max);

/// Episodic task for (user, period); nullopt when the user has no events in
/// the period (callers fall back to the no-interaction path).
std::optional<Task> make_task(const PeriodizedDataset& data, int user,
                              int period, int K);

/// Evaluation variant: holds out at least one query observation by capping
/// the support at min(K, N_t - 1) shots, so every task is scoreable.
std::optional<Task> make_eval_task(const PeriodizedDataset& data, int user,
                                   int period, int K);

}  // namespace chronorec
