"""Input/Output operations: JSON formats, reports and SVG rendering."""
