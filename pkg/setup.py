from setuptools import find_packages, setup

setup(
    name='django-voi-selection',
    version='0.1.0',
    description='Value of information sampling policies for Monte Carlo selection and tree search',
    long_description=open('README.rst').read(),
    license='MIT',
    packages=find_packages(exclude=('example', 'tests')),
    python_requires='>=3.7',
    install_requires=[
        'Django>=3.2',
        'numpy>=1.17',
        'scipy>=1.4',
    ],
    entry_points={
        'console_scripts': [
            'voi-selection = voi_selection.cli:main',
        ],
    },
    include_package_data=True,
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Framework :: Django',
        'Framework :: Django :: 3.2',
        'Framework :: Django :: 4.2',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
