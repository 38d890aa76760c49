#pragma once

#include "formation_lab/catalog.hpp"
#include "formation_lab/classifier.hpp"
#include "formation_lab/error.hpp"
#include "formation_lab/families.hpp"
#include "formation_lab/formations.hpp"
#include "formation_lab/group.hpp"
#include "formation_lab/harness.hpp"
#include "formation_lab/io.hpp"
#include "formation_lab/isomorphism.hpp"
#include "formation_lab/perm.hpp"
#include "formation_lab/products.hpp"
#include "formation_lab/rank.hpp"
#include "formation_lab/series.hpp"
#include "formation_lab/subgroups.hpp"
