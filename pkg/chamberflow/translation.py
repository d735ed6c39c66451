import typing

from . import utils

LANGUAGES = sorted(path.stem for path in (utils.BASE_PATH / "langpacks").glob("*.yml"))


class Translator:
    def __init__(self, lang: str = "en"):
        self.lang = lang
        self.translations = {}

    def load_translation(self):
        if not self.translations:
            self.translations = utils.get_langpack(self.lang)


_translator = Translator()


class Strings:
    def __init__(self, module, translator: Translator = None):
        self.module = module
        self.translator = translator or _translator

        self.translator.load_translation()
        self.name = module.__class__.__name__.replace("Mod", "").lower()
        self._strings = getattr(module.__class__, "strings", {}) or {}

    def get(self, key: str) -> str:
        try:
            return self.translator.translations[self.name][key]
        except KeyError:
            try:
                return self.translator.translations[self.module.name.lower()][key]
            except KeyError:
                return self._strings.get(key, key)

    def __getitem__(self, key: str) -> str:
        return self.get(key)

    def __call__(self, key: str, _: typing.Optional[typing.Any] = None) -> str:
        return self.get(key)
