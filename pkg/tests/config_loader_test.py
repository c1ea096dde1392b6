#!/usr/bin/env python3
"""
Tests for the shared config_loader module.
"""
import logging
import os
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from shared import config_loader as config_loader_module
from shared.config_loader import ConfigLoader


class TestConfigLoader(unittest.TestCase):
    """Test suite for the ConfigLoader class."""

    def setUp(self):
        """Set up an isolated home, project and tool directory."""
        self.temp_dir = tempfile.TemporaryDirectory()
        self.temp_path = Path(self.temp_dir.name)
        self.home_dir = self.temp_path / "home"
        self.user_dir = self.home_dir / ".config" / "precedentcli"
        self.user_dir.mkdir(parents=True)
        self.project_dir = self.temp_path / "project"
        self.project_dir.mkdir()
        self.tool_dir = self.temp_path / "tools" / "explain-precedents"
        (self.tool_dir / "config").mkdir(parents=True)

        self.config_loader = ConfigLoader("explain-precedents", tool_dir=self.tool_dir)
        patches = [
            mock.patch("pathlib.Path.home", return_value=self.home_dir),
            mock.patch("pathlib.Path.cwd", return_value=self.project_dir),
            mock.patch.dict(os.environ, {}, clear=False),
        ]
        for patcher in patches:
            patcher.start()
            self.addCleanup(patcher.stop)
        for key in list(os.environ):
            if key.startswith("PRECEDENTCLI_"):
                del os.environ[key]

    def tearDown(self):
        self.temp_dir.cleanup()

    def test_init(self):
        self.assertEqual(self.config_loader.tool_name, "explain-precedents")
        self.assertIsInstance(self.config_loader.logger, logging.Logger)
        self.assertEqual(self.config_loader.logger.name, "explain-precedents")
        self.assertEqual(self.config_loader.config, {})
        self.assertEqual(self.config_loader.config_source, "built-in defaults")
        self.assertEqual(
            self.config_loader.env_prefix, "PRECEDENTCLI_EXPLAIN_PRECEDENTS_"
        )

        custom_logger = logging.getLogger("custom")
        config_loader = ConfigLoader("custom_tool", logger=custom_logger)
        self.assertEqual(config_loader.logger, custom_logger)

    def test_defaults_without_files(self):
        config = self.config_loader.load_config()
        self.assertEqual(config["caps"]["universe"], 16)
        self.assertEqual(config["caps"]["oracle_universe"], 8)
        self.assertEqual(config["oracle"], {"trials": 200, "seed": 0})
        self.assertEqual(config["output"]["format"], "text")
        self.assertFalse(config["logging"]["log_to_file"])
        self.assertEqual(self.config_loader.config_source, "built-in defaults")

    def test_defaults_are_not_shared_between_loads(self):
        first = self.config_loader.load_config()
        first["caps"]["universe"] = 1
        second = ConfigLoader("explain-precedents").load_config()
        self.assertEqual(second["caps"]["universe"], 16)

    def test_deep_update(self):
        """Nested sections are merged key by key; *_dir values expand ~."""
        base = self.config_loader._get_default_config()
        self.config_loader._deep_update(
            base,
            {
                "caps": {"universe": 12},
                "logging": {"output_dir": "~/logs"},
                "new_section": {"new_setting": "new_value"},
            },
        )
        self.assertEqual(base["caps"]["universe"], 12)
        self.assertEqual(base["caps"]["knowledge"], 16)
        self.assertEqual(base["logging"]["output_dir"], os.path.expanduser("~/logs"))
        self.assertEqual(base["new_section"]["new_setting"], "new_value")

    def test_nest_skips_unset_flags(self):
        self.assertEqual(
            ConfigLoader._nest({"caps.universe": 3, "oracle.seed": None, "top": 1}),
            {"caps": {"universe": 3}, "top": 1},
        )

    def test_convert_env_value(self):
        convert = ConfigLoader._convert_env_value
        self.assertIs(convert("true"), True)
        self.assertIs(convert("YES"), True)
        self.assertIs(convert("False"), False)
        self.assertIs(convert("no"), False)

        # "1" and "0" are numbers, so a cap of 1 stays a cap of 1
        self.assertEqual(convert("1"), 1)
        self.assertNotIsInstance(convert("1"), bool)
        self.assertEqual(convert("-456"), -456)
        self.assertEqual(convert("123.45"), 123.45)

        self.assertEqual(convert("structured"), "structured")
        self.assertEqual(convert("123abc"), "123abc")

    def test_env_overrides_target_existing_sections(self):
        """CAPS_ORACLE_UNIVERSE lands in caps.oracle_universe."""
        os.environ.update(
            {
                "PRECEDENTCLI_EXPLAIN_PRECEDENTS_CAPS_ORACLE_UNIVERSE": "10",
                "PRECEDENTCLI_EXPLAIN_PRECEDENTS_OUTPUT_ANNOTATE": "true",
                "PRECEDENTCLI_EXPLAIN_PRECEDENTS_ORACLE_SEED": "7",
                "PRECEDENTCLI_EXPLAIN_PRECEDENTS_TEST_NEW_KEY": "new_value",
                "PRECEDENTCLI_OTHER_TOOL_CAPS_UNIVERSE": "2",
            }
        )
        config = self.config_loader.load_config()

        self.assertEqual(config["caps"]["oracle_universe"], 10)
        self.assertEqual(config["caps"]["universe"], 16)
        self.assertIs(config["output"]["annotate"], True)
        self.assertEqual(config["oracle"]["seed"], 7)
        self.assertEqual(config["test"]["new"]["key"], "new_value")
        self.assertNotIn("oracle_universe", config)

    def test_get_config_files(self):
        """Config files are listed lowest precedence first."""
        paths = [path for path, _ in self.config_loader._get_config_files()]
        self.assertEqual(
            paths,
            [
                self.tool_dir / "config" / "defaults.toml",
                self.user_dir / "config.toml",
                self.user_dir / "explain-precedents.toml",
                self.project_dir / ".precedentcli.toml",
            ],
        )
        without_tool_dir = ConfigLoader("explain-precedents")._get_config_files()
        self.assertEqual(len(without_tool_dir), 3)

    def test_precedence_chain(self):
        """Each layer overrides the ones below it, ending at command-line flags."""
        (self.tool_dir / "config" / "defaults.toml").write_text(
            "[caps]\nuniverse = 15\nknowledge = 15\noracle_universe = 7\n"
            "extension_nodes = 19\n[oracle]\ntrials = 150\n"
        )
        (self.user_dir / "config.toml").write_text(
            "[caps]\nuniverse = 14\nknowledge = 14\noracle_universe = 6\n"
            "extension_nodes = 18\n"
        )
        (self.user_dir / "explain-precedents.toml").write_text(
            "[caps]\nuniverse = 13\nknowledge = 13\noracle_universe = 5\n"
        )
        (self.project_dir / ".precedentcli.toml").write_text(
            "[caps]\nuniverse = 12\nknowledge = 12\n"
        )
        extra = self.temp_path / "extra.toml"
        extra.write_text("[caps]\nuniverse = 11\nknowledge = 11\n")
        os.environ["PRECEDENTCLI_EXPLAIN_PRECEDENTS_CAPS_UNIVERSE"] = "10"

        config = self.config_loader.load_config(
            extra, {"caps.knowledge": 9, "caps.universe": None}
        )

        self.assertEqual(config["oracle"]["trials"], 150)
        self.assertEqual(config["caps"]["extension_nodes"], 18)
        self.assertEqual(config["caps"]["oracle_universe"], 5)
        self.assertEqual(config["caps"]["universe"], 10)
        self.assertEqual(config["caps"]["knowledge"], 9)
        self.assertEqual(self.config_loader.config_source, str(extra))
        self.assertIs(self.config_loader.config, config)

    def test_missing_extra_file_raises(self):
        with self.assertRaises(FileNotFoundError):
            self.config_loader.load_config(self.temp_path / "absent.toml")

    def test_malformed_file_is_skipped(self):
        (self.project_dir / ".precedentcli.toml").write_text("[caps\nuniverse = ")
        (self.user_dir / "config.toml").write_text("[caps]\nknowledge = 4\n")
        with self.assertLogs("explain-precedents", level="ERROR"):
            config = self.config_loader.load_config()
        self.assertEqual(config["caps"]["universe"], 16)
        self.assertEqual(config["caps"]["knowledge"], 4)

    def test_load_no_toml(self):
        """Without a TOML parser files are ignored; environment and flags still apply."""
        (self.user_dir / "config.toml").write_text("[caps]\nuniverse = 4\n")
        with mock.patch.object(config_loader_module, "tomllib", None):
            config = self.config_loader.load_config(cmd_args={"oracle.trials": 3})
        self.assertEqual(config["caps"]["universe"], 16)
        self.assertEqual(config["oracle"]["trials"], 3)


if __name__ == "__main__":
    unittest.main()
