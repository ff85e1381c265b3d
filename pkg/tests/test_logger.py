"""
Tests for the colored console logger and its separator records.
"""
import io
import logging
import sys
import tempfile
import unittest
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.utils.logger import COLORS, ColorFormatter, ColorHandler, SeparatorLogger, set_package_level, setup_logger


def capture(logger: logging.Logger, use_color: bool = False) -> io.StringIO:
    stream = io.StringIO()
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)
    handler = ColorHandler(stream)
    handler.setFormatter(ColorFormatter('%(levelname)s %(message)s', use_color=use_color))
    logger.addHandler(handler)
    return stream


class TestLogger(unittest.TestCase):
    def test_logger_class(self):
        logger = setup_logger("src.tests.logger_class")
        self.assertIsInstance(logger, SeparatorLogger)
        self.assertFalse(logger.propagate)

    def test_multiline_messages_stay_on_one_line(self):
        logger = setup_logger("src.tests.multiline", level=logging.DEBUG)
        stream = capture(logger)
        logger.info("first\nsecond\nthird")
        self.assertEqual(stream.getvalue(), "[INFO] first second third\n")

    def test_separator_is_a_blank_line(self):
        logger = setup_logger("src.tests.separator")
        stream = capture(logger)
        logger.info("before")
        logger.separator()
        logger.info("after")
        self.assertEqual(stream.getvalue(), "[INFO] before\n\n[INFO] after\n")

    def test_colors(self):
        logger = setup_logger("src.tests.colors")
        stream = capture(logger, use_color=True)
        logger.warning("careful")
        output = stream.getvalue()
        self.assertIn(COLORS['WARNING'], output)
        self.assertTrue(output.rstrip("\n").endswith(COLORS['RESET']))

    def test_level_filters_debug(self):
        logger = setup_logger("src.tests.level")
        stream = capture(logger)
        logger.debug("hidden")
        self.assertEqual(stream.getvalue(), "")

    def test_package_level(self):
        logger = setup_logger("src.tests.package")
        other = setup_logger("elsewhere.tests.package")
        set_package_level(logging.DEBUG)
        self.assertEqual(logger.level, logging.DEBUG)
        self.assertEqual(other.level, logging.INFO)
        set_package_level(logging.INFO)

    def test_package_log_file_is_shared_and_replaced(self):
        logger = setup_logger("src.tests.shared_file")
        other = setup_logger("src.tests.shared_file_other")
        with tempfile.TemporaryDirectory() as tmp:
            first, second = Path(tmp) / "first.log", Path(tmp) / "second.log"
            try:
                set_package_level(logging.INFO, first)
                handlers = [h for h in logger.handlers if isinstance(h, logging.FileHandler)]
                self.assertEqual(len(handlers), 1)
                self.assertIn(handlers[0], other.handlers)
                logger.info("one")

                set_package_level(logging.INFO, second)
                self.assertEqual(len([h for h in logger.handlers if isinstance(h, logging.FileHandler)]), 1)
                logger.info("two")
            finally:
                set_package_level(logging.INFO)
            self.assertFalse(any(isinstance(h, logging.FileHandler) for h in logger.handlers))
            self.assertIn("one", first.read_text())
            self.assertNotIn("two", first.read_text())
            self.assertIn("two", second.read_text())

    def test_log_file_is_uncolored(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "run.log"
            logger = setup_logger("src.tests.file", log_file=path)
            logger.error("written")
            for handler in logger.handlers[:]:
                handler.close()
                logger.removeHandler(handler)
            content = path.read_text()
            self.assertIn("[ERROR] written", content)
            self.assertNotIn("\033[", content)


if __name__ == "__main__":
    unittest.main()
