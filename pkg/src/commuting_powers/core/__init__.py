# Core substrate: settings, errors, models, groups, laws.
