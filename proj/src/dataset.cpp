#include "nfcocomo/dataset.hpp"

#include <cmath>
#include <fstream>
#include <istream>

#include "nfcocomo/errors.hpp"
#include "nfcocomo/rating.hpp"
#include "nfcocomo/textio.hpp"

namespace nfcocomo {

namespace {

constexpr int kNotPresent = -1;

struct ColumnMap {
  int name = kNotPresent;
  int size = kNotPresent;
  int effort = kNotPresent;
  int weight = kNotPresent;
  int mode = kNotPresent;
  std::vector<int> driver;  // model order -> column index
  std::size_t total = 0;
};

[[noreturn]] void fail(const std::string& provenance, int row,
                       const std::string& message) {
  throw ParseError(provenance + ": row " + std::to_string(row) + ": " +
                   message);
}

ColumnMap read_header(const std::vector<std::string_view>& cells,
                      const ModelParams& model,
                      const std::string& provenance) {
  ColumnMap map;
  map.total = cells.size();
  map.driver.assign(model.calibrations.size(), kNotPresent);

  for (std::size_t c = 0; c < cells.size(); ++c) {
    const std::string key = to_lower(trim(cells[c]));
    int* slot = nullptr;
    if (key == "name") {
      slot = &map.name;
    } else if (key == "size_kdsi") {
      slot = &map.size;
    } else if (key == "actual_effort_sm") {
      slot = &map.effort;
    } else if (key == "weight") {
      slot = &map.weight;
    } else if (key == "mode") {
      slot = &map.mode;
    } else {
      for (std::size_t d = 0; d < model.calibrations.size(); ++d) {
        if (to_lower(model.calibrations[d].driver.id) == key) {
          slot = &map.driver[d];
          break;
        }
      }
    }
    if (slot == nullptr) {
      fail(provenance, 1,
           "unknown column '" + std::string(trim(cells[c])) + "' (column " +
               std::to_string(c + 1) + ")");
    }
    if (*slot != kNotPresent) {
      fail(provenance, 1,
           "duplicate column '" + std::string(trim(cells[c])) + "'");
    }
    *slot = static_cast<int>(c);
  }

  if (map.name == kNotPresent) fail(provenance, 1, "missing column 'name'");
  if (map.size == kNotPresent) {
    fail(provenance, 1, "missing column 'size_kdsi'");
  }
  if (map.effort == kNotPresent) {
    fail(provenance, 1, "missing column 'actual_effort_sm'");
  }
  for (std::size_t d = 0; d < model.calibrations.size(); ++d) {
    if (map.driver[d] == kNotPresent) {
      fail(provenance, 1,
           "missing driver column '" + model.calibrations[d].driver.id + "'");
    }
  }
  if (map.mode != kNotPresent &&
      model.coeffs.family != CocomoFamily::cocomo_81) {
    fail(provenance, 1, "column 'mode' only applies to cocomo-81 models");
  }
  return map;
}

double positive_cell(std::string_view cell, const std::string& what, int row,
                     const std::string& provenance) {
  const std::optional<double> value = parse_double(trim(cell));
  if (!value || !std::isfinite(*value) || *value <= 0.0) {
    fail(provenance, row, what + " must be a positive number, got '" +
                              std::string(trim(cell)) + "'");
  }
  return *value;
}

}  // namespace

Dataset parse_dataset_csv(std::istream& in, const ModelParams& model,
                          const std::string& provenance) {
  Dataset dataset;
  dataset.family = model.coeffs.family;
  dataset.provenance = provenance;
  for (const DriverCalibration& calib : model.calibrations) {
    dataset.driver_ids.push_back(calib.driver.id);
  }

  std::string line;
  int row = 0;
  bool have_header = false;
  ColumnMap map;

  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;

    const std::vector<std::string_view> cells = split(line, ',');
    if (!have_header) {
      map = read_header(cells, model, provenance);
      have_header = true;
      continue;
    }

    if (cells.size() != map.total) {
      fail(provenance, row,
           "expected " + std::to_string(map.total) + " cells, got " +
               std::to_string(cells.size()));
    }

    ProjectRecord record;
    record.name = trim(cells[static_cast<std::size_t>(map.name)]);
    if (record.name.empty()) fail(provenance, row, "empty project name");
    record.size = positive_cell(cells[static_cast<std::size_t>(map.size)],
                                "size_kdsi", row, provenance);
    record.actual_effort =
        positive_cell(cells[static_cast<std::size_t>(map.effort)],
                      "actual_effort_sm", row, provenance);

    record.ratings.resize(model.calibrations.size());
    for (std::size_t d = 0; d < model.calibrations.size(); ++d) {
      const std::string_view cell =
          trim(cells[static_cast<std::size_t>(map.driver[d])]);
      const std::optional<double> rating = parse_rating_value(cell);
      if (!rating) {
        fail(provenance, row,
             "driver " + model.calibrations[d].driver.id +
                 ": unrecognized rating '" + std::string(cell) + "'");
      }
      record.ratings[d] = *rating;
    }

    if (map.weight != kNotPresent) {
      const std::string_view cell =
          trim(cells[static_cast<std::size_t>(map.weight)]);
      const std::optional<double> weight = parse_double(cell);
      if (!weight || !std::isfinite(*weight) || *weight < 0.0) {
        fail(provenance, row,
             "weight must be a non-negative number, got '" + std::string(cell) +
                 "'");
      }
      record.weight = *weight;
    }
    if (map.mode != kNotPresent) {
      const std::string_view cell =
          trim(cells[static_cast<std::size_t>(map.mode)]);
      if (!cell.empty()) {
        const std::optional<CocomoMode> mode = parse_mode(cell);
        if (!mode) {
          fail(provenance, row, "unknown mode '" + std::string(cell) + "'");
        }
        record.mode = mode;
      }
    }
    dataset.records.push_back(std::move(record));
  }

  if (!have_header) {
    throw ParseError(provenance + ": missing header row");
  }
  if (dataset.records.empty()) {
    throw ParseError(provenance + ": no data rows");
  }
  return dataset;
}

Dataset load_dataset(const std::string& path, const ModelParams& model) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open dataset file '" + path + "'");
  }
  return parse_dataset_csv(in, model, path);
}

}  // namespace nfcocomo
