#pragma once

#include "commacat/fp_matrix.hpp"
#include "commacat/algebra.hpp"
#include "commacat/module.hpp"
#include "commacat/verdict.hpp"
#include "commacat/family.hpp"
#include "commacat/presentation.hpp"
#include "commacat/comma.hpp"
#include "commacat/torsion.hpp"
#include "commacat/verify.hpp"
#include "commacat/document.hpp"
#include "commacat/tasks.hpp"
#include "commacat/fixtures.hpp"
