from hypothesis import settings

settings.register_profile("wwlab", derandomize=True, deadline=None, max_examples=80)
settings.load_profile("wwlab")
