# Data module: spec files, seeded corpora and shipped examples
