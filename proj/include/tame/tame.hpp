#pragma once

#include "tame/errors.hpp"
#include "tame/bigint.hpp"
#include "tame/int_matrix.hpp"
#include "tame/lattice.hpp"
#include "tame/root_datum.hpp"
#include "tame/spec_json.hpp"
#include "tame/finite_tori.hpp"
#include "tame/twisted_classes.hpp"
#include "tame/dl_correspondence.hpp"
#include "tame/serre_weights.hpp"
#include "tame/finite_field.hpp"
#include "tame/oracle_bench.hpp"
#include "tame/report.hpp"
#include "tame/verification.hpp"
