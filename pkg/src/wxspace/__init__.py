"""Project Indic-script text into the shared WX character space and measure it."""
__version__ = "0.1.0"
