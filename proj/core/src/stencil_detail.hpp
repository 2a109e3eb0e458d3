#pragma once

#include "fracspec/gagliardo.hpp"

namespace fracspec::gagliardo::detail {

void fill_table_2d(NonlocalForm& form);
void fill_table_1d(NonlocalForm& form);

}  // namespace fracspec::gagliardo::detail
