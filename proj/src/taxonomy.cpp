#include "shapecat/taxonomy.hpp"

#include <array>

#include "shapecat/util.hpp"

namespace shapecat {
namespace {

// Directory names as distributed, including the dataset's own spellings
// (cugar_body, dolphine, joushua_tree, water_lilly) and its placement of
// nautilus under plants. Overridable at scan time.
constexpr std::array<std::string_view, 18> kAnimals = {
    "beaver",   "cugar_body", "crocodile", "dolphine", "elephant", "emu",
    "flamingo", "gerenuk",    "hawksbill", "hedgehog", "leopards", "llama",
    "okapi",    "pigeon",     "platypus",  "rhino",    "rooster",  "wild_cat",
};

constexpr std::array<std::string_view, 7> kPlants = {
    "bonsai", "joushua_tree", "lotus", "nautilus", "strawberry", "sunflower", "water_lilly",
};

}  // namespace

std::string_view label_name(ClassLabel label) {
  return label == ClassLabel::Animal ? "animal" : "plant";
}

std::optional<ClassLabel> label_from_name(std::string_view name) {
  const std::string lower = to_lower(name);
  if (lower == "animal" || lower == "animals") return ClassLabel::Animal;
  if (lower == "plant" || lower == "plants") return ClassLabel::Plant;
  return std::nullopt;
}

std::span<const std::string_view> animal_subcategories() { return kAnimals; }
std::span<const std::string_view> plant_subcategories() { return kPlants; }

std::optional<ClassLabel> subcategory_class(std::string_view subcategory) {
  for (std::string_view name : kAnimals)
    if (name == subcategory) return ClassLabel::Animal;
  for (std::string_view name : kPlants)
    if (name == subcategory) return ClassLabel::Plant;
  return std::nullopt;
}

}  // namespace shapecat
