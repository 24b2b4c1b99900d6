"""S-groups, their strict and closed extensions, S-spaces and their coherent extensions."""
