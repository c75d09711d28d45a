#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace shapecat {

enum class ClassLabel : unsigned char { Animal, Plant };

std::string_view label_name(ClassLabel label);                     // "animal" / "plant"
std::optional<ClassLabel> label_from_name(std::string_view name);  // case-insensitive

// The 25 recognized subcategory directory names and their class.
std::span<const std::string_view> animal_subcategories();  // 18 names
std::span<const std::string_view> plant_subcategories();   // 7 names
std::optional<ClassLabel> subcategory_class(std::string_view subcategory);

}  // namespace shapecat
